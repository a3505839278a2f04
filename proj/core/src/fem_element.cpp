#include "sgbeam/fem_element.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace sgbeam {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

QuadratureRule build_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.points.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.points[lo] = -x;
    rule.points[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) {
    rule.points[static_cast<std::size_t>(n / 2)] = 0.0;
  }
  return rule;
}

void check_length(double Le) {
  if (!(std::isfinite(Le) && Le > 0.0)) {
    throw std::invalid_argument("element length must be > 0, got " + std::to_string(Le));
  }
}

void check_nonnegative(double value, const char* name) {
  if (!(std::isfinite(value) && value >= 0.0)) {
    throw std::invalid_argument(std::string("element coefficient ") + name + " must be >= 0");
  }
}

template <class Integrand>
void integrate(double Le, int order, Integrand&& f) {
  const QuadratureRule& rule = gauss_legendre(order);
  for (std::size_t g = 0; g < rule.points.size(); ++g) {
    const double x = 0.5 * Le * (rule.points[g] + 1.0);
    f(x, 0.5 * Le * rule.weights[g]);
  }
}

} // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1 || n > 64) {
    throw std::invalid_argument("quadrature order must lie in [1, 64]");
  }
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, build_gauss_legendre(n)).first;
  }
  return it->second;
}

ShapeEval shape_eval(double x, double Le) {
  check_length(Le);
  if (!(x >= 0.0 && x <= Le)) {
    throw std::invalid_argument("shape_eval: x = " + std::to_string(x) + " outside [0, Le]");
  }
  const double s = x / Le;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double iL = 1.0 / Le;
  const double iL2 = iL * iL;

  ShapeEval e;
  e.h = {2.0 * s3 - 3.0 * s2 + 1.0, Le * (s - 2.0 * s2 + s3), 3.0 * s2 - 2.0 * s3,
         Le * (s3 - s2)};
  e.dh = {(6.0 * s2 - 6.0 * s) * iL, 1.0 - 4.0 * s + 3.0 * s2, (6.0 * s - 6.0 * s2) * iL,
          3.0 * s2 - 2.0 * s};
  e.d2h = {(12.0 * s - 6.0) * iL2, (6.0 * s - 4.0) * iL, (6.0 - 12.0 * s) * iL2,
           (6.0 * s - 2.0) * iL};
  e.d3h = {12.0 * iL2 * iL, 6.0 * iL2, -12.0 * iL2 * iL, 6.0 * iL2};
  return e;
}

ShapeMatrix shape_matrix(double x, double Le) {
  const ShapeEval e = shape_eval(x, Le);
  ShapeMatrix N = ShapeMatrix::Zero();
  N(0, 0) = e.h[0];
  N(0, 1) = e.h[1];
  N(0, 4) = e.h[2];
  N(0, 5) = e.h[3];
  N(1, 0) = e.dh[0];
  N(1, 1) = e.dh[1];
  N(1, 4) = e.dh[2];
  N(1, 5) = e.dh[3];
  N(2, 2) = e.h[0];
  N(2, 3) = e.h[1];
  N(2, 6) = e.h[2];
  N(2, 7) = e.h[3];
  N(3, 2) = e.dh[0];
  N(3, 3) = e.dh[1];
  N(3, 6) = e.dh[2];
  N(3, 7) = e.dh[3];
  return N;
}

OperatorRows operator_rows(double x, double Le) {
  const ShapeEval e = shape_eval(x, Le);

  // Interpolants of one field placed on the v or alpha columns.
  auto on_v = [](const std::array<double, 4>& b) {
    OperatorRow r = OperatorRow::Zero();
    r(0) = b[0];
    r(1) = b[1];
    r(4) = b[2];
    r(5) = b[3];
    return r;
  };
  auto on_alpha = [](const std::array<double, 4>& b) {
    OperatorRow r = OperatorRow::Zero();
    r(2) = b[0];
    r(3) = b[1];
    r(6) = b[2];
    r(7) = b[3];
    return r;
  };

  const OperatorRow v = on_v(e.h);
  const OperatorRow v_x = on_v(e.dh);
  const OperatorRow v_xx = on_v(e.d2h);
  const OperatorRow a = on_alpha(e.h);
  const OperatorRow a_x = on_alpha(e.dh);
  const OperatorRow a_xx = on_alpha(e.d2h);

  OperatorRows r;
  r.D1 = v;
  r.D2 = a;
  r.B1 = a_xx;
  r.B2 = a_x;
  r.B3 = v_xx + a_x;
  r.B4 = 2.0 * a_x - v_xx;
  r.B5 = v_x - a;
  return r;
}

ElementMatrix element_mass(double Le, double A, double B, int quadrature_order) {
  check_length(Le);
  check_nonnegative(A, "A");
  check_nonnegative(B, "B");

  ElementMatrix M = ElementMatrix::Zero();
  integrate(Le, quadrature_order, [&](double x, double w) {
    const OperatorRows r = operator_rows(x, Le);
    M.noalias() += w * (A * r.D1.transpose() * r.D1 + B * r.D2.transpose() * r.D2);
  });
  return 0.5 * (M + M.transpose());
}

ElementMatrix element_stiffness(double Le, double C, double D, double E, double F, double G,
                                int quadrature_order) {
  check_length(Le);
  check_nonnegative(C, "C");
  check_nonnegative(D, "D");
  check_nonnegative(E, "E");
  check_nonnegative(F, "F");
  check_nonnegative(G, "G");

  ElementMatrix K = ElementMatrix::Zero();
  integrate(Le, quadrature_order, [&](double x, double w) {
    const OperatorRows r = operator_rows(x, Le);
    K.noalias() += w * (C * r.B1.transpose() * r.B1 + D * r.B2.transpose() * r.B2 +
                        E * r.B3.transpose() * r.B3 + F * r.B4.transpose() * r.B4 +
                        G * r.B5.transpose() * r.B5);
  });
  return 0.5 * (K + K.transpose());
}

ElementVector element_coupling(double Le, double H, int quadrature_order) {
  check_length(Le);
  if (!std::isfinite(H)) {
    throw std::invalid_argument("element coupling H must be finite");
  }
  ElementVector f = ElementVector::Zero();
  integrate(Le, quadrature_order, [&](double x, double w) {
    f.noalias() -= w * H * operator_rows(x, Le).B2.transpose();
  });
  return f;
}

ElementMatrices element_matrices(double Le, const LumpedCoefficients& c, int quadrature_order) {
  return {element_mass(Le, c.A, c.B, quadrature_order),
          element_stiffness(Le, c.C, c.D, c.E, c.F, c.G, quadrature_order),
          element_coupling(Le, c.H, quadrature_order)};
}

} // namespace sgbeam
