#pragma once

#include "sgbeam/assembly.hpp"
#include "sgbeam/control_diag.hpp"
#include "sgbeam/state.hpp"

#include <Eigen/Core>

#include <numbers>
#include <optional>

namespace sgbeam {

/// Newmark-beta parameters. beta = 1/4, gamma = 1/2 is the average-acceleration
/// rule: unconditionally stable and free of algorithmic damping.
struct IntegratorConfig {
  double dt = 2.0 * std::numbers::pi / 200.0;
  double t_end = 50.0;
  double beta = 0.25;
  double gamma = 0.5;
  int stride = 1;

  bool operator==(const IntegratorConfig&) const = default;
};

void validate(const IntegratorConfig& cfg);

struct ModalResult {
  Eigen::VectorXd omega;  ///< ascending
  Eigen::MatrixXd modes;  ///< columns, mass-normalized
};

/// Smallest `count` solutions of K phi = omega^2 M phi.
ModalResult eigenfrequencies(const GlobalSystem& system, int count);

/// Rank-one damping of the closed loop: with u = k_u qdot[tip alpha] the
/// forcing f u equals -C_fb qdot, C_fb = -k_u f e_tip'.
Eigen::MatrixXd build_feedback_damping(const GlobalSystem& system, double gain);

/// Optional quadrature-based energy evaluation next to the matrix form.
struct EnergyCrossCheck {
  LumpedCoefficients coefficients;
  Mesh mesh;
  int quadrature_order = kDefaultQuadratureOrder;
};

struct SimulationOptions {
  std::optional<EnergyCrossCheck> energy_check;
  bool store_states = true;
};

/// Integrates M q'' + C_fb q' + K q = 0 from `ic`. Samples every `stride`
/// steps and always at the final step.
Trajectory simulate(const GlobalSystem& system, double gain, const State& ic,
                    const IntegratorConfig& cfg, const SimulationOptions& options = {});

struct InitialCondition {
  enum class Kind { zero, static_tip_load, eigenmode };

  Kind kind = Kind::static_tip_load;
  double amplitude = 1e-3;
  int mode_index = 1;  ///< 1-based, for Kind::eigenmode

  bool operator==(const InitialCondition&) const = default;
};

/// zero: rest. static_tip_load: K q = amplitude e_vtip. eigenmode:
/// amplitude * phi_index. All with zero velocity.
State make_initial_condition(const InitialCondition& ic, const GlobalSystem& system);

} // namespace sgbeam
