#include "sgbeam/control_diag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sgbeam {

namespace {

void fill_rates(EnergyReport& r, double H, const ControllerConfig& cfg, double alpha_dot_tip) {
  r.dissipation = -0.5 * H * cfg.effective_gain() * alpha_dot_tip * alpha_dot_tip;
  r.analytic_rate = 2.0 * r.dissipation;
}

} // namespace

void validate(const ControllerConfig& cfg, double coupling_H) {
  if (!(std::isfinite(cfg.gain) && cfg.gain >= 0.0)) {
    throw std::invalid_argument("controller gain k_u must be >= 0");
  }
  if (cfg.enabled && cfg.gain > 0.0 && !(coupling_H * cfg.gain > 0.0)) {
    throw std::invalid_argument("controller: H * k_u must be > 0 for an enabled controller (H = " +
                                std::to_string(coupling_H) + ")");
  }
}

double control_voltage(const State& state, const ControllerConfig& cfg, int tip_alpha_index) {
  if (tip_alpha_index < 0 || tip_alpha_index >= state.qdot.size()) {
    throw std::out_of_range("control_voltage: tip index outside the state vector");
  }
  if (!cfg.enabled) {
    return 0.0;
  }
  return cfg.gain * state.qdot(tip_alpha_index);
}

EnergyReport lyapunov_energy(const State& state, const LumpedCoefficients& c, const Mesh& mesh,
                             const ControllerConfig& cfg, int quadrature_order) {
  const int n_full = kNodeDofs * mesh.n_nodes();
  const auto n = static_cast<int>(state.q.size());
  if (state.qdot.size() != state.q.size() || (n != n_full && n != n_full - kNodeDofs)) {
    throw std::invalid_argument("lyapunov_energy: state of size " + std::to_string(n) +
                                " does not match a mesh of " + std::to_string(mesh.n_nodes()) +
                                " nodes");
  }
  const int offset = n_full - n;  // clamped states omit node 0
  auto dof = [&](const Eigen::VectorXd& x, int full_index) {
    const int i = full_index - offset;
    return i < 0 ? 0.0 : x(i);
  };

  const QuadratureRule& rule = gauss_legendre(quadrature_order);
  EnergyReport r;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double Le = mesh.element_length(e);
    Eigen::Matrix<double, kElementDofs, 1> qe;
    Eigen::Matrix<double, kElementDofs, 1> qde;
    for (int k = 0; k < kElementDofs; ++k) {
      qe(k) = dof(state.q, kNodeDofs * e + k);
      qde(k) = dof(state.qdot, kNodeDofs * e + k);
    }
    for (std::size_t g = 0; g < rule.points.size(); ++g) {
      const double x = 0.5 * Le * (rule.points[g] + 1.0);
      const double w = 0.5 * Le * rule.weights[g];
      const OperatorRows op = operator_rows(x, Le);

      const double v_t = op.D1.dot(qde);
      const double a_t = op.D2.dot(qde);
      const double a_xx = op.B1.dot(qe);
      const double a_x = op.B2.dot(qe);
      const double b3 = op.B3.dot(qe);
      const double b4 = op.B4.dot(qe);
      const double b5 = op.B5.dot(qe);

      r.kinetic += 0.5 * w * (c.A * v_t * v_t + c.B * a_t * a_t);
      r.potential += 0.5 * w *
                     (c.C * a_xx * a_xx + c.D * a_x * a_x + c.E * b3 * b3 + c.F * b4 * b4 +
                      c.G * b5 * b5);
    }
  }
  r.total = r.kinetic + r.potential;
  fill_rates(r, c.H, cfg, dof(state.qdot, full_dof(mesh.n_nodes() - 1, 2)));
  return r;
}

EnergyReport quadratic_energy(const State& state, const GlobalSystem& system, double coupling_H,
                              const ControllerConfig& cfg) {
  if (state.q.size() != system.size() || state.qdot.size() != system.size()) {
    throw std::invalid_argument("quadratic_energy: state size does not match the system");
  }
  EnergyReport r;
  r.kinetic = 0.5 * state.qdot.dot(system.M * state.qdot);
  r.potential = 0.5 * state.q.dot(system.K * state.q);
  r.total = r.kinetic + r.potential;
  fill_rates(r, coupling_H, cfg, state.qdot(system.tip_alpha_index));
  return r;
}

DecayIdentityCheck verify_decay_identity(const Trajectory& tr, const LumpedCoefficients& coeffs,
                                         const ControllerConfig& cfg) {
  const std::size_t n = tr.size();
  if (n < 3) {
    throw std::invalid_argument("verify_decay_identity: need at least 3 samples");
  }
  if (tr.energy.size() != n || tr.alpha_dot_tip.size() != n) {
    throw std::invalid_argument("verify_decay_identity: inconsistent trajectory columns");
  }

  DecayIdentityCheck out;
  out.observed_rate.resize(n);
  out.analytic_rate.resize(n);
  const auto& t = tr.times;
  const auto& E = tr.energy;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = tr.alpha_dot_tip[i];
    out.analytic_rate[i] = -coeffs.H * cfg.effective_gain() * a * a;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out.observed_rate[i] = (E[i + 1] - E[i - 1]) / (t[i + 1] - t[i - 1]);
  }
  // One-sided three-point formulas; assume locally uniform spacing.
  out.observed_rate[0] = (-3.0 * E[0] + 4.0 * E[1] - E[2]) / (t[2] - t[0]);
  out.observed_rate[n - 1] = (3.0 * E[n - 1] - 4.0 * E[n - 2] + E[n - 3]) / (t[n - 1] - t[n - 3]);

  double max_rate = 0.0;
  double max_analytic = 0.0;
  double max_diff = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    max_rate = std::max(max_rate, std::abs(out.observed_rate[i]));
    max_analytic = std::max(max_analytic, std::abs(out.analytic_rate[i]));
    max_diff = std::max(max_diff, std::abs(out.observed_rate[i] - out.analytic_rate[i]));
  }
  if (max_analytic > 0.0) {
    out.max_residual = max_diff / std::max(max_rate, max_analytic);
  } else {
    // No dissipation (open loop, or alpha_t(L) = 0 throughout): the residual is
    // integrator drift, measured against the energy level per unit time.
    const double level = *std::max_element(E.begin(), E.end());
    out.max_residual = level > 0.0 ? max_diff / level : max_diff;
  }
  return out;
}

} // namespace sgbeam
