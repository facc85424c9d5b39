#pragma once

#include <Eigen/Dense>

#include "vacamp/symplectic.hpp"

namespace vacamp {

// phi_1(A) = sum_k A^k / (k+1)! and phi_2(A) = sum_k A^k / (k+2)!, evaluated
// through augmented matrix exponentials so singular A needs no special case.
// They satisfy phi_1(A) = I + A phi_2(A) and phi_1(0) = I, phi_2(0) = I/2.
Eigen::MatrixXd phi1_matrix(const Eigen::MatrixXd& a);
Eigen::MatrixXd phi2_matrix(const Eigen::MatrixXd& a);

// Factorization of an evolution with a linear term,
//   exp(-(i/hbar) (1/2 r^T Ht r + r^T rbar_t))
//     = e^{i theta} W(delta) exp(-(i/2 hbar) r^T Ht r),
// where W is the Weyl displacement W(xi) = exp((i/hbar) xi^T Omega r).
// Ht and rbar_t carry the duration already multiplied in (H t, rbar t).
struct ReducedForm {
  double theta = 0.0;         // global phase of the factored evolution
  Eigen::VectorXd delta;      // displacement argument
  QuadHamiltonian quadratic;  // remaining quadratic generator (= input Ht)
};

ReducedForm reduce_linear(const QuadHamiltonian& ht, const Eigen::VectorXd& rbar_t,
                          double hbar = 2.0);

}  // namespace vacamp
