#pragma once

#include <vector>

#include <Eigen/Dense>

#include "vacamp/symplectic.hpp"

namespace vacamp {

// Truncated number-basis reference implementation. Everything here is meant
// for validation at small mode counts; the total dimension (cutoff+1)^modes
// is capped at 4096.
struct FockConfig {
  int cutoff = 40;  // highest retained number state per mode
  int modes = 1;
  double hbar = 2.0;

  void validate() const;     // throws InvalidInput on violations
  long dimension() const;    // (cutoff + 1)^modes
};

// Single-mode annihilation operator truncated at the cutoff:
// (cutoff+1)^2 with a(n-1, n) = sqrt(n).
Eigen::MatrixXd ladder_matrix(int cutoff);

// Truncated quadrature operators (x_1..x_M, p_1..p_M) on the tensor-product
// space (mode 0 is the outermost kron factor), built from
// x = sqrt(hbar/2)(a + a^dag), p = -i sqrt(hbar/2)(a - a^dag).
std::vector<Eigen::MatrixXcd> quadrature_operators(const FockConfig& cfg);

// Truncated dimensionless generator (1/2 hbar) r^T H r, assembled in normal
// order so hbar cancels:
// tr H / 4 + sum_ij omega_ij adag_i a_j + sum_ij (f_ij adag_i adag_j + c.c.).
// The time evolution is exp(-i t * result). Dense; intended for small
// cutoffs.
Eigen::MatrixXcd build_hamiltonian_fock(const QuadHamiltonian& h, const FockConfig& cfg);

// Truncated Weyl displacement W(xi) = exp((i/hbar) rhat^T Omega xi),
// satisfying W(a) W(b) = exp(-(i/2 hbar) a^T Omega b) W(a + b) and
// W(xi)^dag rhat W(xi) = rhat + xi.
Eigen::MatrixXcd build_weyl_fock(const Eigen::VectorXd& xi, const FockConfig& cfg);

struct OracleAmplitude {
  Complex alpha{1.0, 0.0};
  double convergence_estimate = 0.0;  // |alpha(cutoff) - alpha(cutoff - 4)|
  bool converged = true;
};

// <0|exp(-(i/2 hbar) r^T H r t)|0> on the truncated space, with a cutoff
// study against cutoff - 4. The value at the full cutoff is always returned;
// converged is false when the study gap exceeds tol.
OracleAmplitude vacuum_amplitude_fock(const QuadHamiltonian& h, double t,
                                      const FockConfig& cfg, double tol = 1e-6);

}  // namespace vacamp
