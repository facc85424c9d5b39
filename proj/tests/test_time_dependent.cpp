#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"
#include "vacamp/fock_oracle.hpp"
#include "vacamp/time_dependent.hpp"

using namespace vacamp;
namespace vt = vacamp::testing;

namespace {

Eigen::MatrixXd generic_h() {
  Eigen::MatrixXd h(2, 2);
  h << 1.2, 0.3, 0.3, -0.4;
  return h;
}

// Smooth single-mode ramp used by the convergence-order checks.
HamiltonianSchedule smooth_ramp() {
  return HamiltonianSchedule::from_rule(1, [](double t) {
    Eigen::MatrixXd h(2, 2);
    const double u = std::sin(1.3 * t);
    h << 1.0 + 0.5 * u, 0.4 * t, 0.4 * t, -0.6 + 0.3 * u;
    return h;
  });
}

}  // namespace

TEST_CASE("schedule table validation") {
  const Eigen::MatrixXd h0 = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd h1 = generic_h();
  CHECK_NOTHROW(HamiltonianSchedule::from_table({0.0, 1.0}, {h0, h1}));
  CHECK_THROWS_AS(HamiltonianSchedule::from_table({0.5, 1.0}, {h0, h1}), InvalidInput);
  CHECK_THROWS_AS(HamiltonianSchedule::from_table({0.0, 0.0}, {h0, h1}), InvalidInput);
  CHECK_THROWS_AS(HamiltonianSchedule::from_table({0.0}, {h0, h1}), InvalidInput);
  CHECK_THROWS_AS(HamiltonianSchedule::from_table({}, {}), InvalidInput);
  CHECK_THROWS_AS(
      HamiltonianSchedule::from_table({0.0, 1.0}, {h0, Eigen::MatrixXd::Identity(4, 4)}),
      InvalidInput);
  Eigen::MatrixXd asym = h1;
  asym(0, 1) += 1.0;
  CHECK_THROWS_AS(HamiltonianSchedule::from_table({0.0, 1.0}, {h0, asym}), InvalidInput);
}

TEST_CASE("schedule table interpolates linearly and clamps") {
  const Eigen::MatrixXd h0 = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd h1 = generic_h();
  const HamiltonianSchedule sched = HamiltonianSchedule::from_table({0.0, 2.0}, {h0, h1});
  CHECK(sched.modes() == 1);
  REQUIRE(sched.horizon().has_value());
  CHECK(*sched.horizon() == 2.0);
  CHECK(vt::max_abs_diff(sched.at(0.0).matrix(), h0) == 0.0);
  CHECK(vt::max_abs_diff(sched.at(2.0).matrix(), h1) < 1e-15);
  CHECK(vt::max_abs_diff(sched.at(1.0).matrix(), Eigen::MatrixXd(0.5 * (h0 + h1))) < 1e-15);
  CHECK(vt::max_abs_diff(sched.at(0.5).matrix(), Eigen::MatrixXd(0.75 * h0 + 0.25 * h1)) < 1e-15);
  // Clamped outside the knot span.
  CHECK(vt::max_abs_diff(sched.at(-1.0).matrix(), h0) == 0.0);
  CHECK(vt::max_abs_diff(sched.at(5.0).matrix(), h1) < 1e-15);
}

TEST_CASE("schedule rule passes through and validates samples") {
  const HamiltonianSchedule sched = smooth_ramp();
  CHECK(sched.modes() == 1);
  CHECK_FALSE(sched.horizon().has_value());
  CHECK(sched.at(0.7).matrix()(0, 1) == doctest::Approx(0.28));

  // A rule returning the wrong dimension is caught at sampling time.
  const HamiltonianSchedule bad =
      HamiltonianSchedule::from_rule(2, [](double) { return Eigen::MatrixXd::Identity(2, 2); });
  CHECK_THROWS_AS(bad.at(0.0), InvalidInput);
}

TEST_CASE("trajectory shape and constant-schedule telescoping") {
  const HamiltonianSchedule sched =
      HamiltonianSchedule::from_rule(1, [](double) { return generic_h(); });
  TrotterConfig cfg;
  cfg.steps = 64;
  const RsTrajectory traj = propagate_rs_td(sched, 1.3, cfg);
  REQUIRE(traj.r.size() == 65);
  REQUIRE(traj.s.size() == 65);
  CHECK(traj.dt == doctest::Approx(1.3 / 64.0));
  CHECK(vt::max_abs_diff(traj.r.front(), Eigen::MatrixXcd::Identity(1, 1)) == 0.0);
  CHECK(vt::max_abs_diff(traj.s.front(), Eigen::MatrixXcd::Zero(1, 1)) == 0.0);

  // For a constant schedule the midpoint product telescopes to exp(i Lambda t).
  const auto [r_exact, s_exact] =
      propagate_rs(lambda_matrix(ladder_form(QuadHamiltonian(generic_h()))), 1.3);
  CHECK(vt::max_abs_diff(traj.r.back(), r_exact) < 1e-12);
  CHECK(vt::max_abs_diff(traj.s.back(), s_exact) < 1e-12);

  CHECK_THROWS_AS(propagate_rs_td(sched, -1.0, cfg), InvalidInput);
  TrotterConfig bad;
  bad.steps = 0;
  CHECK_THROWS_AS(propagate_rs_td(sched, 1.0, bad), InvalidInput);
}

TEST_CASE("constant schedule collapses to the time-independent amplitude") {
  const QuadHamiltonian h(generic_h());
  const HamiltonianSchedule sched =
      HamiltonianSchedule::from_rule(1, [](double) { return generic_h(); });
  const double t = 1.3;
  const AmplitudeResult direct = vacuum_amplitude(h, t);
  const AmplitudeResult trotter = amplitude_time_dependent(sched, t);
  CHECK(trotter.method == Method::time_dependent);
  CHECK(std::abs(trotter.alpha - direct.alpha) < 1e-8);
  CHECK_FALSE(trotter.diagnostics.magnitude_flagged);

  // Multimode constant schedule against the general path.
  std::mt19937 rng(223);
  const Eigen::MatrixXd hm = vt::random_hamiltonian(2, rng, 0.7);
  const HamiltonianSchedule sm = HamiltonianSchedule::from_table({0.0, 2.0}, {hm, hm});
  const AmplitudeResult dm = vacuum_amplitude(QuadHamiltonian(hm), 1.1);
  const AmplitudeResult tm = amplitude_time_dependent(sm, 1.1);
  CHECK(std::abs(tm.alpha - dm.alpha) < 1e-8);
}

TEST_CASE("second-order convergence on a smooth ramp") {
  const HamiltonianSchedule sched = smooth_ramp();
  const double t = 1.5;
  TrotterConfig ref_cfg;
  ref_cfg.steps = 4096;
  ref_cfg.richardson = true;
  const Complex ref = amplitude_time_dependent(sched, t, ref_cfg).alpha;

  double prev_err = 0.0;
  for (int k = 0; k < 3; ++k) {
    TrotterConfig cfg;
    cfg.steps = 32 << k;
    const double err = std::abs(amplitude_time_dependent(sched, t, cfg).alpha - ref);
    if (k > 0) {
      const double ratio = prev_err / err;
      CHECK(ratio > 3.2);
      CHECK(ratio < 4.8);
    }
    prev_err = err;
  }

  // Richardson extrapolation beats the plain result at equal base steps.
  TrotterConfig plain;
  plain.steps = 128;
  TrotterConfig rich = plain;
  rich.richardson = true;
  const double err_plain = std::abs(amplitude_time_dependent(sched, t, plain).alpha - ref);
  const double err_rich = std::abs(amplitude_time_dependent(sched, t, rich).alpha - ref);
  CHECK(err_rich < 0.1 * err_plain);
}

TEST_CASE("ramped squeezer against the trotterized oracle") {
  // H(t') = ramp(t') * diag(1, -1): compare against step-wise exact evolution
  // on the truncated Fock space with the same midpoint sampling.
  const auto ramp = [](double tp) { return 0.8 * tp; };
  const HamiltonianSchedule sched = HamiltonianSchedule::from_rule(1, [&](double tp) {
    return Eigen::MatrixXd(ramp(tp) * Eigen::Vector2d(1.0, -1.0).asDiagonal());
  });
  const double t = 1.0;
  TrotterConfig cfg;
  cfg.steps = 2048;
  const AmplitudeResult got = amplitude_time_dependent(sched, t, cfg);

  FockConfig fock;
  fock.cutoff = 60;
  const Eigen::MatrixXcd gen =
      build_hamiltonian_fock(QuadHamiltonian(Eigen::Vector2d(1.0, -1.0).asDiagonal()), fock);
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(fock.dimension());
  state(0) = 1.0;
  const int steps = 400;
  const double dt = t / steps;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
  for (int k = 0; k < steps; ++k) {
    const double mid = (k + 0.5) * dt;
    const Eigen::VectorXcd phases =
        (Complex(0.0, -dt * ramp(mid)) * es.eigenvalues().array().cast<Complex>()).exp();
    state = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * state));
  }
  CHECK(std::abs(got.alpha - state(0)) < 1e-4);
}

TEST_CASE("zero and invalid inputs") {
  const HamiltonianSchedule sched = smooth_ramp();
  const AmplitudeResult zero = amplitude_time_dependent(sched, 0.0);
  CHECK(zero.alpha == Complex(1.0, 0.0));
  CHECK(zero.method == Method::time_dependent);
  CHECK_THROWS_AS(amplitude_time_dependent(sched, -0.5), InvalidInput);
  TrotterConfig overflow;
  overflow.steps = (1 << 20) + 1;
  CHECK_THROWS_AS(amplitude_time_dependent(sched, 1.0, overflow), InvalidInput);
}
