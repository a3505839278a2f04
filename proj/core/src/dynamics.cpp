#include "sgbeam/dynamics.hpp"

#include "sgbeam/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sgbeam {

void validate(const IntegratorConfig& cfg) {
  if (!(std::isfinite(cfg.dt) && cfg.dt > 0.0)) {
    throw std::invalid_argument("integrator dt must be > 0");
  }
  if (!(std::isfinite(cfg.t_end) && cfg.t_end >= 0.0)) {
    throw std::invalid_argument("integrator t_end must be >= 0");
  }
  if (!(cfg.beta >= 0.0 && cfg.beta <= 0.5)) {
    throw std::invalid_argument("newmark beta must lie in [0, 1/2]");
  }
  if (!(cfg.gamma >= 0.5 && std::isfinite(cfg.gamma))) {
    throw std::invalid_argument("newmark gamma must be >= 1/2");
  }
  if (cfg.stride < 1) {
    throw std::invalid_argument("output stride must be >= 1");
  }
}

ModalResult eigenfrequencies(const GlobalSystem& system, int count) {
  const int n = system.size();
  if (count < 1 || count > n) {
    throw std::invalid_argument("eigenfrequencies: requested " + std::to_string(count) +
                                " modes from a system of size " + std::to_string(n));
  }
  if (Eigen::LLT<Eigen::MatrixXd>(system.M).info() != Eigen::Success) {
    throw NumericalError("eigenfrequencies: mass matrix is not positive definite");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(system.K, system.M);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenfrequencies: generalized eigensolver failed");
  }

  ModalResult out;
  out.omega.resize(count);
  out.modes = solver.eigenvectors().leftCols(count);
  for (int i = 0; i < count; ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (!(lambda > 0.0)) {
      throw NumericalError("eigenfrequencies: non-positive eigenvalue " + std::to_string(lambda) +
                           " (is the system clamped?)");
    }
    out.omega(i) = std::sqrt(lambda);

    // Fix the sign: tip deflection positive, else the largest entry positive.
    auto col = out.modes.col(i);
    double ref = 0.0;
    if (system.tip_v_index >= 0 && std::abs(col(system.tip_v_index)) > 1e-12 * col.cwiseAbs().maxCoeff()) {
      ref = col(system.tip_v_index);
    } else {
      Eigen::Index k = 0;
      col.cwiseAbs().maxCoeff(&k);
      ref = col(k);
    }
    if (ref < 0.0) {
      col = -col;
    }
  }
  return out;
}

Eigen::MatrixXd build_feedback_damping(const GlobalSystem& system, double gain) {
  if (!(std::isfinite(gain) && gain >= 0.0)) {
    throw std::invalid_argument("feedback gain k_u must be >= 0");
  }
  const int n = system.size();
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  if (gain == 0.0) {
    return C;
  }
  C.col(system.tip_alpha_index) = -gain * system.f;
  return C;
}

Trajectory simulate(const GlobalSystem& system, double gain, const State& ic,
                    const IntegratorConfig& cfg, const SimulationOptions& options) {
  validate(cfg);
  const int n = system.size();
  if (ic.q.size() != n || ic.qdot.size() != n) {
    throw std::invalid_argument("simulate: initial state size does not match the system");
  }

  const Eigen::MatrixXd C = build_feedback_damping(system, gain);
  const double dt = cfg.dt;
  const double beta = cfg.beta;
  const double gamma = cfg.gamma;

  Eigen::LLT<Eigen::MatrixXd> mass_llt(system.M);
  if (mass_llt.info() != Eigen::Success) {
    throw NumericalError("simulate: mass matrix is not positive definite");
  }
  const Eigen::MatrixXd effective = system.M + gamma * dt * C + beta * dt * dt * system.K;
  Eigen::PartialPivLU<Eigen::MatrixXd> solver(effective);
  const double rcond = solver.rcond();
  if (!(rcond > 1e2 * std::numeric_limits<double>::epsilon())) {
    throw NumericalError("simulate: effective matrix M + gamma dt C + beta dt^2 K is singular "
                         "(rcond = " + std::to_string(rcond) + ")");
  }

  Eigen::VectorXd q = ic.q;
  Eigen::VectorXd v = ic.qdot;
  Eigen::VectorXd a = mass_llt.solve(-(C * v) - system.K * q);

  const ControllerConfig controller{gain, true};
  const double H = -system.f(system.tip_alpha_index);

  // ceil with slack so t_end = k dt does not add a step through rounding.
  const auto steps = static_cast<long>(std::ceil(cfg.t_end / dt - 1e-9));

  Trajectory tr;
  tr.max_energy_discrepancy =
      options.energy_check ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  const auto capacity = static_cast<std::size_t>(steps / cfg.stride + 2);
  tr.times.reserve(capacity);
  tr.energy.reserve(capacity);

  auto record = [&](double t) {
    const State s{q, v, t};
    const EnergyReport e = quadratic_energy(s, system, H, controller);
    tr.times.push_back(t);
    if (options.store_states) {
      tr.q.push_back(q);
      tr.qdot.push_back(v);
    }
    tr.voltage.push_back(gain * v(system.tip_alpha_index));
    tr.energy.push_back(e.total);
    tr.kinetic.push_back(e.kinetic);
    tr.potential.push_back(e.potential);
    tr.v_tip.push_back(q(system.tip_v_index));
    tr.alpha_tip.push_back(q(system.tip_alpha_index));
    tr.alpha_dot_tip.push_back(v(system.tip_alpha_index));

    if (options.energy_check) {
      const auto& chk = *options.energy_check;
      const EnergyReport quad =
          lyapunov_energy(s, chk.coefficients, chk.mesh, controller, chk.quadrature_order);
      const double scale = std::max(std::abs(e.total), std::numeric_limits<double>::min());
      tr.max_energy_discrepancy =
          std::max(tr.max_energy_discrepancy, std::abs(quad.total - e.total) / scale);
    }
  };

  record(ic.t);
  for (long k = 1; k <= steps; ++k) {
    const Eigen::VectorXd q_pred = q + dt * v + (0.5 - beta) * dt * dt * a;
    const Eigen::VectorXd v_pred = v + (1.0 - gamma) * dt * a;
    a = solver.solve(-(C * v_pred) - system.K * q_pred);
    q = q_pred + beta * dt * dt * a;
    v = v_pred + gamma * dt * a;

    if (!q.allFinite() || !v.allFinite()) {
      throw NumericalError("simulate: non-finite state at step " + std::to_string(k) +
                           " (t = " + std::to_string(ic.t + k * dt) + ")");
    }
    if (k % cfg.stride == 0 || k == steps) {
      record(ic.t + static_cast<double>(k) * dt);
    }
  }

  if (tr.size() >= 3) {
    const DecayIdentityCheck check = verify_decay_identity(tr, LumpedCoefficients{.H = H}, controller);
    tr.decay_residual.resize(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
      tr.decay_residual[i] = check.observed_rate[i] - check.analytic_rate[i];
    }
  } else {
    tr.decay_residual.assign(tr.size(), 0.0);
  }
  return tr;
}

State make_initial_condition(const InitialCondition& ic, const GlobalSystem& system) {
  const int n = system.size();
  State s{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0.0};
  switch (ic.kind) {
    case InitialCondition::Kind::zero:
      return s;
    case InitialCondition::Kind::static_tip_load: {
      Eigen::LLT<Eigen::MatrixXd> llt(system.K);
      if (llt.info() != Eigen::Success) {
        throw NumericalError("static tip load: stiffness matrix is singular (is the system clamped?)");
      }
      Eigen::VectorXd load = Eigen::VectorXd::Zero(n);
      load(system.tip_v_index) = ic.amplitude;
      s.q = llt.solve(load);
      return s;
    }
    case InitialCondition::Kind::eigenmode: {
      if (ic.mode_index < 1) {
        throw std::invalid_argument("eigenmode initial condition: mode index is 1-based");
      }
      const ModalResult modes = eigenfrequencies(system, ic.mode_index);
      s.q = ic.amplitude * modes.modes.col(ic.mode_index - 1);
      return s;
    }
  }
  throw std::invalid_argument("unknown initial condition kind");
}

} // namespace sgbeam
