#pragma once

#include "sgbeam/model_params.hpp"

#include <Eigen/Core>

#include <array>
#include <vector>

namespace sgbeam {

// Element DOF order: (v1, v1x, alpha1, alpha1x, v2, v2x, alpha2, alpha2x).
inline constexpr int kElementDofs = 8;
inline constexpr int kNodeDofs = 4;
inline constexpr int kDefaultQuadratureOrder = 4;

using ElementMatrix = Eigen::Matrix<double, kElementDofs, kElementDofs>;
using ElementVector = Eigen::Matrix<double, kElementDofs, 1>;
using OperatorRow = Eigen::Matrix<double, 1, kElementDofs>;
using ShapeMatrix = Eigen::Matrix<double, 4, kElementDofs>;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point rule, exact for polynomials of degree 2n - 1. Rules are cached.
const QuadratureRule& gauss_legendre(int n);

/// Cubic Hermite basis and its first three derivatives at x in [0, Le].
struct ShapeEval {
  std::array<double, 4> h{};
  std::array<double, 4> dh{};
  std::array<double, 4> d2h{};
  std::array<double, 4> d3h{};
};

ShapeEval shape_eval(double x, double Le);

/// Rows interpolate (v, v_x, alpha, alpha_x).
ShapeMatrix shape_matrix(double x, double Le);

/// Field operators at one point; each row dotted with q gives the quantity in
/// the trailing comment.
struct OperatorRows {
  OperatorRow D1; // v
  OperatorRow D2; // alpha
  OperatorRow B1; // alpha_xx
  OperatorRow B2; // alpha_x
  OperatorRow B3; // v_xx + alpha_x
  OperatorRow B4; // 2 alpha_x - v_xx
  OperatorRow B5; // v_x - alpha
};

OperatorRows operator_rows(double x, double Le);

ElementMatrix element_mass(double Le, double A, double B,
                           int quadrature_order = kDefaultQuadratureOrder);

ElementMatrix element_stiffness(double Le, double C, double D, double E, double F, double G,
                                int quadrature_order = kDefaultQuadratureOrder);

/// f_e = -int_0^Le H B2^T dx; the element load under voltage u is f_e u.
ElementVector element_coupling(double Le, double H,
                               int quadrature_order = kDefaultQuadratureOrder);

struct ElementMatrices {
  ElementMatrix mass;
  ElementMatrix stiffness;
  ElementVector coupling;
};

ElementMatrices element_matrices(double Le, const LumpedCoefficients& c,
                                 int quadrature_order = kDefaultQuadratureOrder);

} // namespace sgbeam
