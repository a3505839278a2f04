#pragma once

#include "sgbeam/fem_element.hpp"

#include <Eigen/Core>

#include <array>
#include <vector>

namespace sgbeam {

/// One-dimensional mesh on [0, L]; node 0 is the clamped root.
class Mesh {
 public:
  static Mesh uniform(double length, int n_elements);
  static Mesh from_lengths(std::vector<double> element_lengths);

  int n_elements() const { return static_cast<int>(lengths_.size()); }
  int n_nodes() const { return n_elements() + 1; }
  double length() const { return nodes_.back(); }
  double element_length(int e) const { return lengths_.at(static_cast<std::size_t>(e)); }
  const std::vector<double>& element_lengths() const { return lengths_; }
  const std::vector<double>& node_positions() const { return nodes_; }

 private:
  explicit Mesh(std::vector<double> lengths);

  std::vector<double> lengths_;
  std::vector<double> nodes_;
};

/// Assembled mass, stiffness and voltage-coupling of the beam.
///
/// The equation of motion is M q'' + K q = f u(t). Before clamping the
/// unknowns are the four node DOFs (v, v_x, alpha, alpha_x) of every node in
/// node order; clamping removes the four DOFs of node 0.
struct GlobalSystem {
  Eigen::MatrixXd M;
  Eigen::MatrixXd K;
  Eigen::VectorXd f;
  /// Per element, the global index of each local DOF; -1 marks a clamped DOF.
  std::vector<std::array<int, kElementDofs>> dof_map;
  /// Full (unclamped) index of each active DOF.
  std::vector<int> active_dofs;
  bool clamped = false;
  int n_nodes = 0;
  int tip_v_index = -1;
  int tip_alpha_index = -1;

  int size() const { return static_cast<int>(M.rows()); }
};

/// Global index of DOF `local` (0..3) at `node` in the unclamped numbering.
constexpr int full_dof(int node, int local) { return kNodeDofs * node + local; }

GlobalSystem assemble(const Mesh& mesh, const std::vector<ElementMatrices>& per_element);

/// Same, accumulating elements in the given order (a permutation of 0..n-1).
GlobalSystem assemble(const Mesh& mesh, const std::vector<ElementMatrices>& per_element,
                      const std::vector<int>& processing_order);

/// Element matrices for a beam of uniform lamination, then assemble.
GlobalSystem assemble(const Mesh& mesh, const LumpedCoefficients& coefficients,
                      int quadrature_order = kDefaultQuadratureOrder);

/// Deletes the rows and columns of (v, v_x, alpha, alpha_x) at node 0.
GlobalSystem apply_clamp(const GlobalSystem& system);

/// Expands a vector over active DOFs to the full node numbering (zeros on clamped DOFs).
Eigen::VectorXd expand_to_full(const GlobalSystem& system, const Eigen::VectorXd& active);

} // namespace sgbeam
