#pragma once

#include <Eigen/Dense>

#include "vacamp/symplectic.hpp"

namespace vacamp {

// Williamson normal form of a positive definite H: H = T^T (D + D) T with T
// symplectic and D + D shorthand for diag(d_1..d_M, d_1..d_M). The d_j > 0
// are the symplectic eigenvalues, sorted descending.
struct WilliamsonFactors {
  SymplecticMatrix t;
  Eigen::VectorXd d;
};

// Requires H positive definite (smallest eigenvalue > 1e-10 * max|H|);
// throws InvalidInput otherwise.
WilliamsonFactors williamson(const QuadHamiltonian& h);

// Takagi (Autonne) factorization of a complex symmetric F: F = W diag(s) W^T
// with W unitary and s >= 0 sorted descending.
struct TakagiFactors {
  Eigen::MatrixXcd w;
  Eigen::VectorXd s;
};

// Requires F = F^T within 1e-12 * max|F|; throws InvalidInput otherwise.
// Computed through the eigendecomposition of the real embedding
// [[Re F, Im F], [Im F, -Re F]], whose spectrum is +-s; repeated and zero
// singular values are handled by construction.
TakagiFactors takagi(const Eigen::MatrixXcd& f);

}  // namespace vacamp
