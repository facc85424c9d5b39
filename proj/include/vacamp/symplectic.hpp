#pragma once

#include <complex>

#include <Eigen/Dense>

#include "vacamp/errors.hpp"

namespace vacamp {

using Complex = std::complex<double>;

// Quadrature convention used throughout: r = (x_1..x_M, p_1..p_M), i.e. all
// positions first, then all momenta ("xxpp" ordering).

// Symplectic form Omega = [[0, I], [-I, 0]] for M modes (2M x 2M).
Eigen::MatrixXd omega_matrix(int modes);

// Coefficient matrix of a quadratic Hamiltonian (1/2 hbar) r^T H r.
// Validates that H is square, even-dimensional, finite and symmetric to
// 1e-12 * max|H|, then stores the exactly symmetrized (H + H^T)/2.
class QuadHamiltonian {
 public:
  explicit QuadHamiltonian(const Eigen::MatrixXd& h);

  int modes() const { return modes_; }
  const Eigen::MatrixXd& matrix() const { return h_; }
  double max_abs() const { return max_abs_; }

  // Blocks of H = [[E, F], [F^T, G]], each modes x modes. E couples x with x,
  // G couples p with p, F couples x with p.
  Eigen::Block<const Eigen::MatrixXd> block_xx() const;
  Eigen::Block<const Eigen::MatrixXd> block_xp() const;
  Eigen::Block<const Eigen::MatrixXd> block_pp() const;

 private:
  Eigen::MatrixXd h_;
  int modes_ = 0;
  double max_abs_ = 0.0;
};

// A real matrix validated to satisfy S Omega S^T = Omega, with max-norm
// residual at most 1e-10 * max(1, max|S|^2).
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(const Eigen::MatrixXd& s);

  int modes() const { return modes_; }
  const Eigen::MatrixXd& matrix() const { return s_; }

  // max-norm of S Omega S^T - Omega; exposed so callers can check candidate
  // matrices without triggering the constructor's throw.
  static double residual(const Eigen::MatrixXd& s);

 private:
  Eigen::MatrixXd s_;
  int modes_ = 0;
};

// Matrix exponential of a finite square matrix (scaling-and-squaring Pade).
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

// Heisenberg-picture propagator S = exp(Omega H t) of the evolution
// U = exp(-(i/2 hbar) r^T H r t), acting as U^dag r U = S r. Independent of
// hbar. The result is validated symplectic.
SymplecticMatrix heisenberg_symplectic(const QuadHamiltonian& h, double t);

// Probability to stay in vacuum, |<0|U|0>|^2 = 1 / sqrt(det[(S S^T + I)/2]),
// where S is the Heisenberg propagator of U. Computed via Cholesky log-det;
// throws NumericalFailure if the result would underflow to zero.
double vacuum_probability(const SymplecticMatrix& s);

// Hamiltonian matrix of the conjugated evolution: if U^dag r U = M r for the
// (symplectic) frame change M, the generator H transforms as M^T H M.
QuadHamiltonian conjugate_hamiltonian(const QuadHamiltonian& h,
                                      const SymplecticMatrix& m);

}  // namespace vacamp
