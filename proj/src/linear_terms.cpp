#include "vacamp/linear_terms.hpp"

#include <cmath>
#include <string>

namespace vacamp {

namespace {

void require_square_finite(const Eigen::MatrixXd& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidInput(std::string(what) + ": expected a nonempty square matrix");
  }
  if (!a.allFinite()) {
    throw InvalidInput(std::string(what) + ": matrix has non-finite entries");
  }
}

}  // namespace

Eigen::MatrixXd phi1_matrix(const Eigen::MatrixXd& a) {
  require_square_finite(a, "phi1_matrix");
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = a;
  aug.block(0, n, n, n).setIdentity();
  return matrix_exponential(aug).block(0, n, n, n);
}

Eigen::MatrixXd phi2_matrix(const Eigen::MatrixXd& a) {
  require_square_finite(a, "phi2_matrix");
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  aug.topLeftCorner(n, n) = a;
  aug.block(0, n, n, n).setIdentity();
  aug.block(n, 2 * n, n, n).setIdentity();
  return matrix_exponential(aug).block(0, 2 * n, n, n);
}

ReducedForm reduce_linear(const QuadHamiltonian& ht, const Eigen::VectorXd& rbar_t,
                          double hbar) {
  if (rbar_t.size() != 2 * ht.modes()) {
    throw InvalidInput("reduce_linear: rbar must have length 2 * modes, got " +
                       std::to_string(rbar_t.size()));
  }
  if (!rbar_t.allFinite()) {
    throw InvalidInput("reduce_linear: rbar has non-finite entries");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw InvalidInput("reduce_linear: hbar must be positive and finite");
  }
  const Eigen::MatrixXd omega = omega_matrix(ht.modes());
  const Eigen::MatrixXd a = omega * ht.matrix();
  const Eigen::VectorXd omega_r = omega * rbar_t;
  const double theta = -rbar_t.dot(phi2_matrix(a) * omega_r) / (2.0 * hbar);
  Eigen::VectorXd delta = phi1_matrix(a) * omega_r;
  return ReducedForm{theta, std::move(delta), ht};
}

}  // namespace vacamp
