// Sanity checks on the test oracles themselves.

#include "closed_loop_mode.hpp"
#include "simpson_element.hpp"
#include "timoshenko.hpp"

#include <doctest.h>

#include <cmath>

TEST_CASE("Timoshenko oracle approaches Euler-Bernoulli for a stiff shear layer") {
  // The transfer matrix grows like exp(sqrt(G / D) L), which bounds how stiff
  // the shear layer can be made.
  const double beta1 = 1.8751040687119611;
  const double beta2 = 4.6940911329741745;
  double previous = 1.0;
  for (double G : {1e2, 1e3, 1e4}) {
    const oracle::TimoshenkoBeam b{1.0, 1e-8, 1.0, G, 1.0};
    const auto w = oracle::cantilever_frequencies(b, 2, 30.0);
    REQUIRE(w.size() == 2);
    const double err = std::abs(w[0] / (beta1 * beta1) - 1.0);
    CHECK(w[0] < beta1 * beta1);
    CHECK(w[1] < beta2 * beta2);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("shear flexibility lowers the Timoshenko frequencies") {
  const oracle::TimoshenkoBeam stiff{1.0, 1e-4, 1e-4, 1e-1, 1.0};
  const oracle::TimoshenkoBeam soft{1.0, 1e-4, 1e-4, 1e-3, 1.0};
  CHECK(oracle::cantilever_frequencies(soft, 1, 1.0)[0] <
        oracle::cantilever_frequencies(stiff, 1, 1.0)[0]);
  CHECK(oracle::tip_deflection(soft, 1.0) == doctest::Approx(1.0 / 3e-4 + 1e3));
}

TEST_CASE("Simpson oracle integrates the Hermite mass exactly") {
  oracle::Coeffs c;
  c.A = 1;
  const double Le = 0.7;
  const auto o = oracle::simpson_element(Le, c);
  // Consistent cubic mass matrix entries for the transverse DOFs.
  CHECK(o.M(0, 0) == doctest::Approx(156.0 * Le / 420.0).epsilon(1e-12));
  CHECK(o.M(0, 1) == doctest::Approx(22.0 * Le * Le / 420.0).epsilon(1e-12));
  CHECK(o.M(0, 4) == doctest::Approx(54.0 * Le / 420.0).epsilon(1e-12));
  CHECK(o.M(1, 5) == doctest::Approx(-3.0 * Le * Le * Le / 420.0).epsilon(1e-12));
  CHECK(o.M(2, 2) == 0.0);
  // The mass rows sum to the integral of a rigid translation.
  double total = 0.0;
  for (int i : {0, 4}) {
    for (int j : {0, 4}) {
      total += o.M(i, j);
    }
  }
  CHECK(total == doctest::Approx(Le).epsilon(1e-12));
}

TEST_CASE("closed-loop mode oracle returns an eigenpair of the state matrix") {
  sgbeam::GlobalSystem sys;
  sys.M = Eigen::Matrix2d::Identity();
  sys.K = Eigen::Matrix2d{{2.0, -1.0}, {-1.0, 2.0}};
  sys.f = Eigen::Vector2d{0.0, -1.0};
  sys.tip_v_index = 0;
  sys.tip_alpha_index = 1;
  const auto m = oracle::closed_loop_mode(sys, 0.5, 1.0, 1e-3);
  CHECK(m.lambda.real() < 0.0);
  CHECK(m.state.q(0) == doctest::Approx(1e-3));
}
