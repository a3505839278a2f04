#include "sgbeam/assembly.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace sgbeam {

Mesh::Mesh(std::vector<double> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.empty()) {
    throw std::invalid_argument("mesh needs at least one element");
  }
  nodes_.reserve(lengths_.size() + 1);
  nodes_.push_back(0.0);
  for (double le : lengths_) {
    if (!(std::isfinite(le) && le > 0.0)) {
      throw std::invalid_argument("mesh element lengths must be > 0");
    }
    nodes_.push_back(nodes_.back() + le);
  }
}

Mesh Mesh::uniform(double length, int n_elements) {
  if (n_elements < 1) {
    throw std::invalid_argument("mesh needs at least one element");
  }
  if (!(std::isfinite(length) && length > 0.0)) {
    throw std::invalid_argument("mesh length must be > 0");
  }
  Mesh mesh(std::vector<double>(static_cast<std::size_t>(n_elements), length / n_elements));
  // Node positions from i * h keep the tip exactly at L.
  for (int i = 0; i <= n_elements; ++i) {
    mesh.nodes_[static_cast<std::size_t>(i)] = length * i / n_elements;
  }
  return mesh;
}

Mesh Mesh::from_lengths(std::vector<double> element_lengths) {
  return Mesh(std::move(element_lengths));
}

GlobalSystem assemble(const Mesh& mesh, const std::vector<ElementMatrices>& per_element) {
  std::vector<int> order(per_element.size());
  std::iota(order.begin(), order.end(), 0);
  return assemble(mesh, per_element, order);
}

GlobalSystem assemble(const Mesh& mesh, const std::vector<ElementMatrices>& per_element,
                      const std::vector<int>& processing_order) {
  if (static_cast<int>(per_element.size()) != mesh.n_elements()) {
    throw std::invalid_argument("assemble: " + std::to_string(per_element.size()) +
                                " element matrix sets for a mesh of " +
                                std::to_string(mesh.n_elements()) + " elements");
  }

  GlobalSystem sys;
  sys.n_nodes = mesh.n_nodes();
  const int n = kNodeDofs * sys.n_nodes;
  sys.M = Eigen::MatrixXd::Zero(n, n);
  sys.K = Eigen::MatrixXd::Zero(n, n);
  sys.f = Eigen::VectorXd::Zero(n);
  sys.active_dofs.resize(static_cast<std::size_t>(n));
  std::iota(sys.active_dofs.begin(), sys.active_dofs.end(), 0);

  sys.dof_map.resize(per_element.size());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int local = 0; local < kElementDofs; ++local) {
      sys.dof_map[static_cast<std::size_t>(e)][static_cast<std::size_t>(local)] =
          kNodeDofs * e + local;
    }
  }

  std::vector<bool> seen(per_element.size(), false);
  if (processing_order.size() != per_element.size()) {
    throw std::invalid_argument("assemble: processing order must list every element once");
  }
  for (int e : processing_order) {
    if (e < 0 || e >= mesh.n_elements() || seen[static_cast<std::size_t>(e)]) {
      throw std::invalid_argument("assemble: processing order must list every element once");
    }
    seen[static_cast<std::size_t>(e)] = true;

    const ElementMatrices& em = per_element[static_cast<std::size_t>(e)];
    const int base = kNodeDofs * e;
    sys.M.block<kElementDofs, kElementDofs>(base, base) += em.mass;
    sys.K.block<kElementDofs, kElementDofs>(base, base) += em.stiffness;
    sys.f.segment<kElementDofs>(base) += em.coupling;
  }

  const int tip = sys.n_nodes - 1;
  sys.tip_v_index = full_dof(tip, 0);
  sys.tip_alpha_index = full_dof(tip, 2);
  return sys;
}

GlobalSystem assemble(const Mesh& mesh, const LumpedCoefficients& coefficients,
                      int quadrature_order) {
  std::vector<ElementMatrices> elements;
  elements.reserve(static_cast<std::size_t>(mesh.n_elements()));
  for (double le : mesh.element_lengths()) {
    elements.push_back(element_matrices(le, coefficients, quadrature_order));
  }
  return assemble(mesh, elements);
}

GlobalSystem apply_clamp(const GlobalSystem& sys) {
  if (sys.clamped) {
    throw std::logic_error("apply_clamp: system is already clamped");
  }
  const int n = sys.size() - kNodeDofs;

  GlobalSystem out;
  out.clamped = true;
  out.n_nodes = sys.n_nodes;
  out.M = sys.M.bottomRightCorner(n, n);
  out.K = sys.K.bottomRightCorner(n, n);
  out.f = sys.f.tail(n);
  out.active_dofs.assign(sys.active_dofs.begin() + kNodeDofs, sys.active_dofs.end());
  out.dof_map = sys.dof_map;
  for (auto& map : out.dof_map) {
    for (int& g : map) {
      g = (g < kNodeDofs) ? -1 : g - kNodeDofs;
    }
  }
  out.tip_v_index = sys.tip_v_index - kNodeDofs;
  out.tip_alpha_index = sys.tip_alpha_index - kNodeDofs;
  return out;
}

Eigen::VectorXd expand_to_full(const GlobalSystem& sys, const Eigen::VectorXd& active) {
  if (active.size() != sys.size()) {
    throw std::invalid_argument("expand_to_full: vector size does not match the system");
  }
  Eigen::VectorXd full = Eigen::VectorXd::Zero(kNodeDofs * sys.n_nodes);
  for (int i = 0; i < active.size(); ++i) {
    full(sys.active_dofs[static_cast<std::size_t>(i)]) = active(i);
  }
  return full;
}

} // namespace sgbeam
