#pragma once

#include <random>

#include <Eigen/Dense>

#include "vacamp/symplectic.hpp"

// Shared deterministic generators for the test suites. Everything takes an
// explicit engine so each test controls its own seed.
namespace vacamp::testing {

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937& rng,
                                     double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      a(i, j) = dist(rng);
    }
  }
  return a;
}

inline Eigen::MatrixXd random_symmetric(int dim, std::mt19937& rng, double scale = 1.0) {
  const Eigen::MatrixXd a = random_matrix(dim, dim, rng, scale);
  return 0.5 * (a + a.transpose());
}

inline Eigen::VectorXd random_vector(int dim, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = dist(rng);
  }
  return v;
}

// Generic quadratic Hamiltonian coefficient matrix.
inline Eigen::MatrixXd random_hamiltonian(int modes, std::mt19937& rng,
                                          double scale = 1.0) {
  return random_symmetric(2 * modes, rng, scale);
}

// Passive: f = 0, i.e. H = [[E, A], [A^T, E]] with E symmetric, A antisymmetric.
inline Eigen::MatrixXd random_passive(int modes, std::mt19937& rng, double scale = 1.0) {
  const Eigen::MatrixXd e = random_symmetric(modes, rng, scale);
  const Eigen::MatrixXd b = random_matrix(modes, modes, rng, scale);
  const Eigen::MatrixXd a = 0.5 * (b - b.transpose());
  Eigen::MatrixXd h(2 * modes, 2 * modes);
  h << e, a, a.transpose(), e;
  return h;
}

// Active: omega = 0, i.e. H = [[E, F], [F, -E]] with E, F both symmetric.
inline Eigen::MatrixXd random_active(int modes, std::mt19937& rng, double scale = 1.0) {
  const Eigen::MatrixXd e = random_symmetric(modes, rng, scale);
  const Eigen::MatrixXd f = random_symmetric(modes, rng, scale);
  Eigen::MatrixXd h(2 * modes, 2 * modes);
  h << e, f, f, -e;
  return h;
}

inline Eigen::MatrixXd random_positive_definite(int modes, std::mt19937& rng,
                                                double scale = 1.0) {
  const int dim = 2 * modes;
  const Eigen::MatrixXd a = random_matrix(dim, dim, rng, scale);
  return Eigen::MatrixXd(a * a.transpose() / dim +
                         0.2 * scale * scale * Eigen::MatrixXd::Identity(dim, dim));
}

inline Eigen::MatrixXd random_symplectic(int modes, std::mt19937& rng,
                                         double scale = 0.5) {
  const Eigen::MatrixXd q = random_symmetric(2 * modes, rng, scale);
  return matrix_exponential(Eigen::MatrixXd(omega_matrix(modes) * q));
}

template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b) {
  return (a.template cast<Complex>() - b.template cast<Complex>()).cwiseAbs().maxCoeff();
}

}  // namespace vacamp::testing
