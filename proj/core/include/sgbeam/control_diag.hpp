#pragma once

#include "sgbeam/assembly.hpp"
#include "sgbeam/model_params.hpp"
#include "sgbeam/state.hpp"

#include <vector>

namespace sgbeam {

/// Tip-rate feedback u(t) = k_u * alpha_t(L).
struct ControllerConfig {
  double gain = 0.6;
  bool enabled = true;

  double effective_gain() const { return enabled ? gain : 0.0; }
  bool operator==(const ControllerConfig&) const = default;
};

/// Rejects k_u < 0, and H * k_u <= 0 for an enabled controller with k_u > 0
/// (that sign combination pumps energy into the beam).
void validate(const ControllerConfig& cfg, double coupling_H);

/// Mechanical energy of a state and its dissipation rate under feedback.
struct EnergyReport {
  double total = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  /// <X, AX> = -1/2 H k_u alpha_t(L)^2.
  double dissipation = 0.0;
  /// dE/dt = 2 <X, AX> = -H k_u alpha_t(L)^2.
  double analytic_rate = 0.0;
};

double control_voltage(const State& state, const ControllerConfig& cfg, int tip_alpha_index);

/// Energy functional evaluated from Hermite-interpolated fields with Gauss
/// quadrature, element by element. Accepts full (4 * n_nodes) or clamped
/// (4 * n_nodes - 4) state vectors.
EnergyReport lyapunov_energy(const State& state, const LumpedCoefficients& coeffs,
                             const Mesh& mesh, const ControllerConfig& cfg = {0.0, false},
                             int quadrature_order = kDefaultQuadratureOrder);

/// Same energy as 1/2 qdot' M qdot + 1/2 q' K q.
EnergyReport quadratic_energy(const State& state, const GlobalSystem& system, double coupling_H,
                              const ControllerConfig& cfg = {0.0, false});

struct DecayIdentityCheck {
  /// max |dE/dt_fd - dE/dt_analytic| over interior samples, divided by the larger
  /// of max |dE/dt_fd| and max |dE/dt_analytic| (by max E when no dissipation).
  double max_residual = 0.0;
  std::vector<double> observed_rate;
  std::vector<double> analytic_rate;
};

/// Compares central-difference dE/dt of a sampled trajectory with the analytic
/// rate -H k_u alpha_t(L)^2. Endpoints use one-sided second-order differences
/// and are excluded from max_residual. Needs at least three samples.
DecayIdentityCheck verify_decay_identity(const Trajectory& trajectory,
                                         const LumpedCoefficients& coeffs,
                                         const ControllerConfig& cfg);

} // namespace sgbeam
