#pragma once

// Global stiffness by direct quadrature over [0, L]: at every sample point the
// global Hermite basis functions are evaluated and the energy integrand is
// accumulated for every DOF pair. No element matrices are formed.

#include "simpson_element.hpp"

#include <Eigen/Core>

#include <vector>

namespace oracle {

inline Eigen::MatrixXd global_stiffness(const std::vector<double>& nodes, const Coeffs& c,
                                        int points_per_element = 2001) {
  const int n_nodes = static_cast<int>(nodes.size());
  const int n = 4 * n_nodes;
  std::vector<long double> K(static_cast<std::size_t>(n) * n, 0.0L);

  for (int e = 0; e + 1 < n_nodes; ++e) {
    const long double x0 = nodes[static_cast<std::size_t>(e)];
    const long double Le = nodes[static_cast<std::size_t>(e + 1)] - x0;
    const int intervals = points_per_element - 1;
    const long double step = Le / intervals;
    for (int i = 0; i <= intervals; ++i) {
      const long double w = step / 3 * ((i == 0 || i == intervals) ? 1 : (i % 2 ? 4 : 2));
      std::array<long double, 4> h, dh, d2h;
      hermite(step * i, Le, h, dh, d2h);

      // Basis functions with support here: v-type and alpha-type DOFs of both nodes.
      struct Active {
        int dof;
        long double v, vx, vxx, a, ax, axx;
      };
      std::vector<Active> act;
      const int base = 4 * e;
      const int offs[4] = {0, 1, 4, 5};
      for (int k = 0; k < 4; ++k) {
        act.push_back({base + offs[k], h[k], dh[k], d2h[k], 0, 0, 0});
        act.push_back({base + offs[k] + 2, 0, 0, 0, h[k], dh[k], d2h[k]});
      }
      for (const Active& p : act) {
        for (const Active& q : act) {
          const long double b3 = (p.vxx + p.ax) * (q.vxx + q.ax);
          const long double b4 = (2 * p.ax - p.vxx) * (2 * q.ax - q.vxx);
          const long double b5 = (p.vx - p.a) * (q.vx - q.a);
          K[static_cast<std::size_t>(p.dof) * n + q.dof] +=
              w * (c.C * p.axx * q.axx + c.D * p.ax * q.ax + c.E * b3 + c.F * b4 + c.G * b5);
        }
      }
    }
  }
  Eigen::MatrixXd out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      out(r, s) = static_cast<double>(K[static_cast<std::size_t>(r) * n + s]);
    }
  }
  return out;
}

} // namespace oracle
