#pragma once

#include <Eigen/Core>

#include <vector>

namespace sgbeam {

/// Generalized displacements and velocities of the (clamped) system at time t.
struct State {
  Eigen::VectorXd q;
  Eigen::VectorXd qdot;
  double t = 0.0;
};

/// Sampled time history of one run. All per-sample vectors share one length.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> q;
  std::vector<Eigen::VectorXd> qdot;
  std::vector<double> voltage;
  std::vector<double> energy;
  std::vector<double> kinetic;
  std::vector<double> potential;
  std::vector<double> v_tip;
  std::vector<double> alpha_tip;
  std::vector<double> alpha_dot_tip;
  /// dE/dt (finite difference) minus the analytic dissipation rate.
  std::vector<double> decay_residual;
  /// Largest relative gap between quadrature and matrix energy; NaN when not checked.
  double max_energy_discrepancy = 0.0;

  std::size_t size() const { return times.size(); }
};

} // namespace sgbeam
