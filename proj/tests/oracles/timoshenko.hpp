#pragma once

// Classical clamped-free Timoshenko cantilever, solved without finite elements.
//
//   A w^2 v + G (v'' - a') = 0,   B w^2 a + D a'' + G (v' - a) = 0
//   v = a = 0 at x = 0;  v' - a = 0 and a' = 0 at x = L.
//
// The transfer matrix exp(S(w) L) of the first-order system maps the two free
// initial slopes to the two free-end conditions; natural frequencies are the
// zeros of that 2x2 determinant.

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

struct TimoshenkoBeam {
  double A;  // mass per length
  double B;  // rotary inertia per length
  double D;  // bending rigidity
  double G;  // shear rigidity
  double L;
};

inline double cantilever_determinant(const TimoshenkoBeam& b, double omega) {
  const double w2 = omega * omega;
  // y = (v, v', a, a')
  Eigen::Matrix4d S = Eigen::Matrix4d::Zero();
  S(0, 1) = 1.0;
  S(1, 0) = -b.A * w2 / b.G;
  S(1, 3) = 1.0;
  S(2, 3) = 1.0;
  S(3, 1) = -b.G / b.D;
  S(3, 2) = b.G / b.D - b.B * w2 / b.D;
  const Eigen::Matrix4d T = (S * b.L).exp();
  // Columns for v'(0) and a'(0).
  const Eigen::Vector4d y1 = T.col(1);
  const Eigen::Vector4d y2 = T.col(3);
  const double r11 = y1(1) - y1(2), r12 = y2(1) - y2(2);
  const double r21 = y1(3), r22 = y2(3);
  return r11 * r22 - r12 * r21;
}

/// First `count` roots of the characteristic determinant, by scanning and bisection.
inline std::vector<double> cantilever_frequencies(const TimoshenkoBeam& b, int count,
                                                  double omega_max, int scan_points = 20000) {
  std::vector<double> roots;
  const double step = omega_max / scan_points;
  double lo = step * 1e-3;
  double f_lo = cantilever_determinant(b, lo);
  for (int i = 1; i <= scan_points && static_cast<int>(roots.size()) < count; ++i) {
    const double hi = step * i;
    const double f_hi = cantilever_determinant(b, hi);
    if (std::signbit(f_lo) != std::signbit(f_hi)) {
      double a = lo, c = hi, fa = f_lo;
      for (int it = 0; it < 200 && c - a > 1e-15 * c; ++it) {
        const double m = 0.5 * (a + c);
        const double fm = cantilever_determinant(b, m);
        if (std::signbit(fm) == std::signbit(fa)) {
          a = m;
          fa = fm;
        } else {
          c = m;
        }
      }
      roots.push_back(0.5 * (a + c));
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (static_cast<int>(roots.size()) < count) {
    throw std::runtime_error("timoshenko oracle: too few roots below omega_max");
  }
  return roots;
}

/// Tip deflection under a unit tip force: bending plus shear.
inline double tip_deflection(const TimoshenkoBeam& b, double P) {
  return P * b.L * b.L * b.L / (3.0 * b.D) + P * b.L / b.G;
}

} // namespace oracle
