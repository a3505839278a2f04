#include "sgbeam/dynamics.hpp"
#include "sgbeam/errors.hpp"
#include "sgbeam/model.hpp"

#include "closed_loop_mode.hpp"
#include "timoshenko.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace sgbeam;

namespace {

constexpr double kT1 = 2.0 * std::numbers::pi;

const BeamModel& model() {
  static const BeamModel m = build_model(default_inputs());
  return m;
}

GlobalSystem diagonal_system(int n, double mass, double stiffness) {
  GlobalSystem s;
  s.M = mass * Eigen::MatrixXd::Identity(n, n);
  s.K = stiffness * Eigen::MatrixXd::Identity(n, n);
  s.f = Eigen::VectorXd::Zero(n);
  s.clamped = true;
  s.tip_v_index = 0;
  s.tip_alpha_index = n - 1;
  return s;
}

IntegratorConfig config(double dt, double t_end) {
  IntegratorConfig c;
  c.dt = dt;
  c.t_end = t_end;
  return c;
}

} // namespace

TEST_CASE("identity mass and stiffness give unit frequencies") {
  const ModalResult r = eigenfrequencies(diagonal_system(6, 1.0, 1.0), 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(r.omega(i) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("quadrupling the mass halves every frequency") {
  GlobalSystem s = model().system;
  const ModalResult a = eigenfrequencies(s, 5);
  s.M *= 4.0;
  const ModalResult b = eigenfrequencies(s, 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(b.omega(i) == doctest::Approx(0.5 * a.omega(i)).epsilon(1e-12));
  }
}

TEST_CASE("modes are ascending, mass-normalized and tip-positive") {
  const GlobalSystem& s = model().system;
  const ModalResult r = eigenfrequencies(s, 8);
  for (int i = 0; i < 8; ++i) {
    const Eigen::VectorXd phi = r.modes.col(i);
    CHECK(phi.dot(s.M * phi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi.dot(s.K * phi) == doctest::Approx(r.omega(i) * r.omega(i)).epsilon(1e-10));
    CHECK(phi(s.tip_v_index) >= 0.0);
    if (i > 0) {
      CHECK(r.omega(i) > r.omega(i - 1));
    }
  }
  CHECK(r.omega(0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eigenfrequency preconditions") {
  const GlobalSystem& s = model().system;
  CHECK_THROWS_AS(eigenfrequencies(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(eigenfrequencies(s, s.size() + 1), std::invalid_argument);
  GlobalSystem bad = diagonal_system(3, 1.0, 1.0);
  bad.M(1, 1) = -1.0;
  CHECK_THROWS_AS(eigenfrequencies(bad, 1), NumericalError);
}

TEST_CASE("classical frequencies approach the Timoshenko characteristic roots") {
  const double A = 1.0, B = 2e-4, D = 2e-4, G = 1.0;
  const LumpedCoefficients c{.A = A, .B = B, .D = D, .G = G};
  const GlobalSystem s = apply_clamp(assemble(Mesh::uniform(1.0, 64), c));
  const ModalResult r = eigenfrequencies(s, 3);
  const std::vector<double> exact = oracle::cantilever_frequencies({A, B, D, G, 1.0}, 3, 3.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(r.omega(i) == doctest::Approx(exact[static_cast<std::size_t>(i)]).epsilon(0.01));
  }
}

TEST_CASE("feedback damping matrix") {
  const GlobalSystem& s = model().system;
  CHECK(build_feedback_damping(s, 0.0).norm() == 0.0);
  CHECK_THROWS_AS(build_feedback_damping(s, -0.1), std::invalid_argument);

  const Eigen::MatrixXd C = build_feedback_damping(s, 0.6);
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
  CHECK(lu.rank() == 1);

  Eigen::VectorXd qdot = Eigen::VectorXd::Zero(s.size());
  qdot(s.tip_alpha_index) = 1.0;
  CHECK((C * qdot + 0.6 * s.f).norm() == 0.0);

  const Eigen::MatrixXd sym = 0.5 * (C + C.transpose());
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues();
  CHECK(ev.minCoeff() >= -1e-14 * ev.cwiseAbs().maxCoeff());
}

TEST_CASE("zero initial state stays at rest") {
  const GlobalSystem& s = model().system;
  const State ic = make_initial_condition({InitialCondition::Kind::zero, 1.0, 1}, s);
  const Trajectory tr = simulate(s, 0.6, ic, config(kT1 / 200.0, 5.0));
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(tr.energy[i] == 0.0);
    CHECK(tr.voltage[i] == 0.0);
    CHECK(tr.q[i].norm() == 0.0);
  }
}

TEST_CASE("first mode oscillates with period 2 pi / omega1") {
  const GlobalSystem& s = model().system;
  const State ic = make_initial_condition({InitialCondition::Kind::eigenmode, 1e-3, 1}, s);
  const double dt = kT1 / 200.0;
  const Trajectory tr = simulate(s, 0.0, ic, config(dt, 1.5 * kT1));
  // Peak of v_tip near t = T1, refined by a parabola through three samples.
  std::size_t k = 150;
  for (std::size_t i = 150; i < 250; ++i) {
    if (tr.v_tip[i] > tr.v_tip[k]) {
      k = i;
    }
  }
  const double ym = tr.v_tip[k - 1], y0 = tr.v_tip[k], yp = tr.v_tip[k + 1];
  const double shift = 0.5 * (ym - yp) / (ym - 2.0 * y0 + yp);
  const double period = tr.times[k] + shift * dt;
  CHECK(period == doctest::Approx(kT1).epsilon(1e-3));
  CHECK(tr.v_tip[k] == doctest::Approx(tr.v_tip[0]).epsilon(1e-3));
}

TEST_CASE("open loop conserves energy") {
  const GlobalSystem& s = model().system;
  const State ic = make_initial_condition({}, s);
  const double dt = kT1 / 200.0;
  const Trajectory tr = simulate(s, 0.0, ic, config(dt, 1e4 * dt), {std::nullopt, false});
  CHECK(tr.size() == 10001);
  const double E0 = tr.energy.front();
  double per_step = 0.0, total = 0.0;
  for (std::size_t i = 1; i < tr.size(); ++i) {
    per_step = std::max(per_step, std::abs(tr.energy[i] - tr.energy[i - 1]) / E0);
    total = std::max(total, std::abs(tr.energy[i] - E0) / E0);
  }
  CHECK(per_step <= 1e-9);
  CHECK(total <= 1e-6);
}

TEST_CASE("closed loop energy never rises") {
  const GlobalSystem& s = model().system;
  for (double gain : {0.1, 0.6, 2.0}) {
    const State ic = make_initial_condition({}, s);
    const Trajectory tr = simulate(s, gain, ic, config(kT1 / 200.0, 50.0), {std::nullopt, false});
    const double E0 = tr.energy.front();
    for (std::size_t i = 1; i < tr.size(); ++i) {
      CHECK(tr.energy[i] <= tr.energy[i - 1] + 1e-9 * E0);
    }
  }
}

TEST_CASE("every initial condition kind is suppressed by k_u = 0.6") {
  const GlobalSystem& s = model().system;
  for (auto kind : {InitialCondition::Kind::static_tip_load, InitialCondition::Kind::eigenmode}) {
    const State ic = make_initial_condition({kind, 1e-3, 1}, s);
    const Trajectory tr = simulate(s, 0.6, ic, config(kT1 / 200.0, 50.0), {std::nullopt, false});
    CHECK(tr.energy.back() / tr.energy.front() < 1e-2);
  }
  const State zero = make_initial_condition({InitialCondition::Kind::zero, 1e-3, 1}, s);
  const Trajectory tr = simulate(s, 0.6, zero, config(kT1 / 200.0, 50.0), {std::nullopt, false});
  CHECK(tr.energy.back() == 0.0);
}

TEST_CASE("larger gain extracts more energy over the initial window") {
  const GlobalSystem& s = model().system;
  for (auto kind : {InitialCondition::Kind::static_tip_load, InitialCondition::Kind::eigenmode}) {
    const State ic = make_initial_condition({kind, 1e-3, 1}, s);
    double prev = INFINITY;
    for (double gain : {0.0, 0.1, 0.3, 0.6}) {
      const Trajectory tr = simulate(s, gain, ic, config(kT1 / 200.0, 10.0), {std::nullopt, false});
      CHECK(tr.energy.back() <= prev);
      prev = tr.energy.back();
    }
  }
}

TEST_CASE("Newmark average acceleration is second order in dt") {
  const GlobalSystem& s = model().system;
  const oracle::ClosedLoopMode mode = oracle::closed_loop_mode(s, 0.6, 1.0, 1e-3);
  const ModalResult modes = eigenfrequencies(s, 2);
  const oracle::ClosedLoopMode second = oracle::closed_loop_mode(s, 0.6, modes.omega(1), 1e-4);
  State ic = mode.state;
  ic.q += second.state.q;  // a second frequency, still smooth
  ic.qdot += second.state.qdot;
  const double t_end = 5.0;
  auto final_q = [&](double dt) {
    return simulate(s, 0.6, ic, config(dt, t_end), {std::nullopt, true}).q.back();
  };
  const double dt = t_end / 250.0;
  const Eigen::VectorXd ref = final_q(dt / 16.0);
  const double e1 = (final_q(dt) - ref).norm();
  const double e2 = (final_q(dt / 2.0) - ref).norm();
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.12));
}

TEST_CASE("initial condition energies") {
  const GlobalSystem& s = model().system;
  const State st = make_initial_condition({InitialCondition::Kind::static_tip_load, 2e-3, 1}, s);
  CHECK(st.qdot.norm() == 0.0);
  CHECK((s.K * st.q)(s.tip_v_index) == doctest::Approx(2e-3).epsilon(1e-10));
  const Trajectory tr = simulate(s, 0.0, st, config(0.01, 0.02));
  CHECK(tr.energy.front() == doctest::Approx(0.5 * st.q.dot(s.K * st.q)).epsilon(1e-15));
  CHECK(tr.kinetic.front() == 0.0);

  const double a = 0.05;
  const ModalResult r = eigenfrequencies(s, 3);
  const State em = make_initial_condition({InitialCondition::Kind::eigenmode, a, 3}, s);
  const double E0 = 0.5 * em.q.dot(s.K * em.q);
  CHECK(E0 == doctest::Approx(0.5 * a * a * r.omega(2) * r.omega(2)).epsilon(1e-10));

  CHECK_THROWS_AS(make_initial_condition({InitialCondition::Kind::eigenmode, a, 0}, s), std::invalid_argument);
}

TEST_CASE("output stride keeps the final sample") {
  const GlobalSystem& s = model().system;
  const State ic = make_initial_condition({}, s);
  IntegratorConfig c = config(0.1, 1.05);  // 11 steps
  c.stride = 4;
  const Trajectory tr = simulate(s, 0.6, ic, c);
  REQUIRE(tr.size() == 4);  // steps 0, 4, 8, 11
  CHECK(tr.times[1] == doctest::Approx(0.4));
  CHECK(tr.times.back() == doctest::Approx(1.1));
  CHECK(tr.q.size() == tr.size());
  CHECK(tr.decay_residual.size() == tr.size());
  CHECK(std::isnan(tr.max_energy_discrepancy));
}

TEST_CASE("integrator configuration is validated") {
  IntegratorConfig c;
  c.dt = 0.0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = {};
  c.beta = 0.6;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = {};
  c.gamma = 0.4;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = {};
  c.stride = 0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = {};
  c.t_end = -1.0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("numerical failures are reported") {
  const double dt = 0.1;
  GlobalSystem s = diagonal_system(3, 1.0, -1.0 / (0.25 * dt * dt));
  const State ic{Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(3), 0.0};
  CHECK_THROWS_AS(simulate(s, 0.0, ic, config(dt, 1.0)), NumericalError);

  const GlobalSystem& m = model().system;
  State nan_ic = make_initial_condition({}, m);
  nan_ic.q(0) = std::nan("");
  CHECK_THROWS_AS(simulate(m, 0.6, nan_ic, config(dt, 1.0)), NumericalError);

  const State wrong{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2), 0.0};
  CHECK_THROWS_AS(simulate(m, 0.6, wrong, config(dt, 1.0)), std::invalid_argument);
}

TEST_CASE("debug energy check agrees with the quadratic form") {
  const BeamModel& bm = model();
  SimulationOptions opt;
  opt.energy_check = EnergyCrossCheck{bm.nondim.coefficients, bm.mesh, 4};
  const State ic = make_initial_condition({}, bm.system);
  const Trajectory tr = simulate(bm.system, 0.6, ic, config(kT1 / 200.0, 5.0), opt);
  CHECK(tr.max_energy_discrepancy <= 1e-12);
}

TEST_CASE("omega1 converges at second order or better under refinement") {
  auto omega1 = [](int n) {
    ModelInputs in = default_inputs();
    in.n_elements = n;
    const BeamModel m = build_model(in);
    return m.omega_to_si(eigenfrequencies(m.system, 1).omega(0));
  };
  const double w4 = omega1(4), w8 = omega1(8), w16 = omega1(16);
  const double ratio = (w4 - w8) / (w8 - w16);
  CHECK(ratio >= 4.0);
  CHECK(w4 >= w8);
  CHECK(w8 >= w16);
}
