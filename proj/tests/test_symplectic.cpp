#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"
#include "vacamp/symplectic.hpp"

using namespace vacamp;
namespace vt = vacamp::testing;

TEST_CASE("omega_matrix blocks and algebra") {
  const Eigen::MatrixXd omega = omega_matrix(2);
  Eigen::MatrixXd expected(4, 4);
  expected << 0, 0, 1, 0,
              0, 0, 0, 1,
             -1, 0, 0, 0,
              0, -1, 0, 0;
  CHECK(vt::max_abs_diff(omega, expected) == 0.0);
  // Omega^2 = -I and Omega^T = -Omega.
  CHECK(vt::max_abs_diff(omega * omega, -Eigen::MatrixXd::Identity(4, 4)) == 0.0);
  CHECK(vt::max_abs_diff(omega.transpose(), -omega) == 0.0);
  CHECK_THROWS_AS(omega_matrix(0), InvalidInput);
}

TEST_CASE("QuadHamiltonian validation and blocks") {
  Eigen::MatrixXd h(4, 4);
  h << 1, 2, 3, 4,
       2, 5, 6, 7,
       3, 6, 8, 9,
       4, 7, 9, 10;
  const QuadHamiltonian qh(h);
  CHECK(qh.modes() == 2);
  CHECK(qh.max_abs() == 10.0);
  CHECK(vt::max_abs_diff(qh.block_xx(), h.topLeftCorner(2, 2)) == 0.0);
  CHECK(vt::max_abs_diff(qh.block_xp(), h.topRightCorner(2, 2)) == 0.0);
  CHECK(vt::max_abs_diff(qh.block_pp(), h.bottomRightCorner(2, 2)) == 0.0);

  Eigen::MatrixXd bad = h;
  bad(0, 1) += 1e-6;
  CHECK_THROWS_AS(QuadHamiltonian{bad}, InvalidInput);
  CHECK_THROWS_AS(QuadHamiltonian(Eigen::MatrixXd::Zero(3, 3)), InvalidInput);
  CHECK_THROWS_AS(QuadHamiltonian(Eigen::MatrixXd::Zero(2, 4)), InvalidInput);
  Eigen::MatrixXd nan2 = Eigen::MatrixXd::Zero(2, 2);
  nan2(0, 0) = std::nan("");
  CHECK_THROWS_AS(QuadHamiltonian{nan2}, InvalidInput);
  // Tiny asymmetry within tolerance is symmetrized away.
  Eigen::MatrixXd nearly = h;
  nearly(0, 1) += 1e-13;
  const QuadHamiltonian qn(nearly);
  CHECK(vt::max_abs_diff(qn.matrix(), qn.matrix().transpose()) == 0.0);
}

TEST_CASE("matrix_exponential on known inputs") {
  const double theta = std::numbers::pi / 3.0;
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -theta, theta, 0;
  Eigen::MatrixXd expected(2, 2);
  expected << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  CHECK(vt::max_abs_diff(matrix_exponential(rot), expected) < 1e-14);

  Eigen::MatrixXd nil(2, 2);
  nil << 0, 1, 0, 0;
  Eigen::MatrixXd nil_exp(2, 2);
  nil_exp << 1, 1, 0, 1;
  CHECK(vt::max_abs_diff(matrix_exponential(nil), nil_exp) == 0.0);

  // Complex: exp(i (pi/2) sigma_x) = i sigma_x.
  Eigen::MatrixXcd sx(2, 2);
  sx << Complex(0, 0), Complex(0, std::numbers::pi / 2),
        Complex(0, std::numbers::pi / 2), Complex(0, 0);
  Eigen::MatrixXcd isx(2, 2);
  isx << Complex(0, 0), Complex(0, 1), Complex(0, 1), Complex(0, 0);
  CHECK(vt::max_abs_diff(matrix_exponential(sx), isx) < 1e-15);

  CHECK_THROWS_AS(matrix_exponential(Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 3))), InvalidInput);
}

TEST_CASE("SymplecticMatrix accepts symplectic, rejects others") {
  CHECK_NOTHROW(SymplecticMatrix(Eigen::MatrixXd::Identity(4, 4)));
  Eigen::MatrixXd squeeze(2, 2);
  squeeze << 2.0, 0.0, 0.0, 0.5;
  CHECK_NOTHROW(SymplecticMatrix{squeeze});
  CHECK_THROWS_AS(SymplecticMatrix(2.0 * Eigen::MatrixXd::Identity(2, 2)), InvalidInput);
  CHECK_THROWS_AS(SymplecticMatrix(Eigen::MatrixXd::Identity(3, 3)), InvalidInput);

  std::mt19937 rng(7);
  for (int m = 1; m <= 4; ++m) {
    const Eigen::MatrixXd s = vt::random_symplectic(m, rng);
    CHECK(SymplecticMatrix::residual(s) < 1e-10 * std::max(1.0, std::pow(s.cwiseAbs().maxCoeff(), 2)));
    CHECK_NOTHROW(SymplecticMatrix{s});
  }
}

TEST_CASE("heisenberg_symplectic reproduces textbook propagators") {
  // Shear generated by the quadratic-phase gate P(t) = exp(i t x^2 / 2 hbar),
  // i.e. H = -diag(1, 0): S = [[1, 0], [t, 1]].
  Eigen::MatrixXd h(2, 2);
  h << -1, 0, 0, 0;
  const double t = 1.7;
  const SymplecticMatrix s = heisenberg_symplectic(QuadHamiltonian(h), t);
  Eigen::MatrixXd expected(2, 2);
  expected << 1, 0, t, 1;
  CHECK(vt::max_abs_diff(s.matrix(), expected) < 1e-14);

  // Harmonic oscillator H = I rotates phase space clockwise.
  const SymplecticMatrix r = heisenberg_symplectic(QuadHamiltonian(Eigen::MatrixXd::Identity(2, 2)), t);
  Eigen::MatrixXd rot(2, 2);
  rot << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  CHECK(vt::max_abs_diff(r.matrix(), rot) < 1e-14);

  CHECK_THROWS_AS(heisenberg_symplectic(QuadHamiltonian(h), std::nan("")), InvalidInput);
}

TEST_CASE("vacuum_probability closed-form values") {
  // Identity propagator: vacuum untouched.
  CHECK(vacuum_probability(SymplecticMatrix(Eigen::MatrixXd::Identity(6, 6))) == 1.0);

  // Single-mode squeezer S = diag(e^r, e^-r): p = 1/cosh r.
  Eigen::MatrixXd sq(2, 2);
  sq << std::exp(1.0), 0, 0, std::exp(-1.0);
  CHECK(vacuum_probability(SymplecticMatrix(sq)) == doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-12));

  // Shear S = [[1, 0], [1, 1]]: det[(S S^T + I)/2] = 5/4.
  Eigen::MatrixXd shear(2, 2);
  shear << 1, 0, 1, 1;
  CHECK(vacuum_probability(SymplecticMatrix(shear)) ==
        doctest::Approx(1.0 / std::sqrt(1.25)).epsilon(1e-12));

  // Rotations leave the vacuum invariant.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const Eigen::MatrixXd s = vt::random_symplectic(m, rng);
    const double p = vacuum_probability(SymplecticMatrix(s));
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("vacuum_probability underflow raises") {
  // Three modes squeezed by r = 300 each: p ~ e^{-900}, below the double range,
  // while every matrix entry stays finite.
  Eigen::VectorXd diag(6);
  diag << std::exp(300.0), std::exp(300.0), std::exp(300.0),
          std::exp(-300.0), std::exp(-300.0), std::exp(-300.0);
  const Eigen::MatrixXd sq = diag.asDiagonal();
  CHECK_THROWS_AS(vacuum_probability(SymplecticMatrix(sq)), NumericalFailure);
}

TEST_CASE("conjugate_hamiltonian congruence") {
  const QuadHamiltonian h(Eigen::MatrixXd::Identity(2, 2));
  Eigen::MatrixXd sq(2, 2);
  sq << 2.0, 0.0, 0.0, 0.5;
  const QuadHamiltonian hp = conjugate_hamiltonian(h, SymplecticMatrix(sq));
  Eigen::MatrixXd expected(2, 2);
  expected << 4.0, 0.0, 0.0, 0.25;
  CHECK(vt::max_abs_diff(hp.matrix(), expected) < 1e-15);

  // Quadratic form is preserved: r^T H' r = (M r)^T H (M r).
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const QuadHamiltonian hr(vt::random_hamiltonian(m, rng));
    const Eigen::MatrixXd s = vt::random_symplectic(m, rng);
    const QuadHamiltonian hc = conjugate_hamiltonian(hr, SymplecticMatrix(s));
    const Eigen::VectorXd r = vt::random_vector(2 * m, rng);
    const Eigen::VectorXd sr = s * r;
    CHECK(r.dot(hc.matrix() * r) == doctest::Approx(sr.dot(hr.matrix() * sr)).epsilon(1e-10));
  }

  CHECK_THROWS_AS(conjugate_hamiltonian(h, SymplecticMatrix(Eigen::MatrixXd::Identity(4, 4))),
                  InvalidInput);
}
