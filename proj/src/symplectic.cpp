#include "vacamp/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace vacamp {

namespace {

void require_square_finite(const Eigen::MatrixXd& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidInput(std::string(what) + ": expected a nonempty square matrix, got " +
                       std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) {
    throw InvalidInput(std::string(what) + ": matrix has non-finite entries");
  }
}

}  // namespace

Eigen::MatrixXd omega_matrix(int modes) {
  if (modes < 1) {
    throw InvalidInput("omega_matrix: modes must be >= 1, got " + std::to_string(modes));
  }
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  omega.topRightCorner(modes, modes).setIdentity();
  omega.bottomLeftCorner(modes, modes) = -Eigen::MatrixXd::Identity(modes, modes);
  return omega;
}

QuadHamiltonian::QuadHamiltonian(const Eigen::MatrixXd& h) {
  require_square_finite(h, "QuadHamiltonian");
  if (h.rows() % 2 != 0) {
    throw InvalidInput("QuadHamiltonian: dimension must be even (2M), got " +
                       std::to_string(h.rows()));
  }
  max_abs_ = h.cwiseAbs().maxCoeff();
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * max_abs_) {
    throw InvalidInput("QuadHamiltonian: matrix is not symmetric (residual " +
                       std::to_string(asym) + ")");
  }
  h_ = 0.5 * (h + h.transpose());
  modes_ = static_cast<int>(h.rows()) / 2;
}

Eigen::Block<const Eigen::MatrixXd> QuadHamiltonian::block_xx() const {
  return h_.topLeftCorner(modes_, modes_);
}

Eigen::Block<const Eigen::MatrixXd> QuadHamiltonian::block_xp() const {
  return h_.topRightCorner(modes_, modes_);
}

Eigen::Block<const Eigen::MatrixXd> QuadHamiltonian::block_pp() const {
  return h_.bottomRightCorner(modes_, modes_);
}

double SymplecticMatrix::residual(const Eigen::MatrixXd& s) {
  const int modes = static_cast<int>(s.rows()) / 2;
  const Eigen::MatrixXd omega = omega_matrix(modes);
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticMatrix::SymplecticMatrix(const Eigen::MatrixXd& s) {
  require_square_finite(s, "SymplecticMatrix");
  if (s.rows() % 2 != 0) {
    throw InvalidInput("SymplecticMatrix: dimension must be even (2M), got " +
                       std::to_string(s.rows()));
  }
  const double scale = std::max(1.0, std::pow(s.cwiseAbs().maxCoeff(), 2));
  const double res = residual(s);
  if (res > 1e-10 * scale) {
    throw InvalidInput("SymplecticMatrix: S Omega S^T - Omega residual " +
                       std::to_string(res) + " exceeds tolerance");
  }
  s_ = s;
  modes_ = static_cast<int>(s.rows()) / 2;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) {
  require_square_finite(a, "matrix_exponential");
  return a.exp();
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidInput("matrix_exponential: expected a nonempty square matrix, got " +
                       std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) {
    throw InvalidInput("matrix_exponential: matrix has non-finite entries");
  }
  return a.exp();
}

SymplecticMatrix heisenberg_symplectic(const QuadHamiltonian& h, double t) {
  if (!std::isfinite(t)) {
    throw InvalidInput("heisenberg_symplectic: t must be finite");
  }
  const Eigen::MatrixXd omega = omega_matrix(h.modes());
  return SymplecticMatrix(matrix_exponential(Eigen::MatrixXd(omega * h.matrix() * t)));
}

double vacuum_probability(const SymplecticMatrix& s) {
  const Eigen::MatrixXd& m = s.matrix();
  const Eigen::MatrixXd a = 0.5 * (m * m.transpose() + Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  // a is symmetric positive definite with det >= 1, so Cholesky always exists
  // and the log-determinant is nonnegative.
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("vacuum_probability: Cholesky factorization failed");
  }
  double log_det = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    log_det += 2.0 * std::log(llt.matrixL()(i, i));
  }
  const double log_prob = -0.5 * log_det;
  if (log_prob < std::log(std::numeric_limits<double>::min())) {
    throw NumericalFailure("vacuum_probability: probability underflows (log prob " +
                           std::to_string(log_prob) + ")");
  }
  return std::min(1.0, std::exp(log_prob));
}

QuadHamiltonian conjugate_hamiltonian(const QuadHamiltonian& h, const SymplecticMatrix& m) {
  if (h.modes() != m.modes()) {
    throw InvalidInput("conjugate_hamiltonian: mode count mismatch (" +
                       std::to_string(h.modes()) + " vs " + std::to_string(m.modes()) + ")");
  }
  // The product is symmetric in exact arithmetic; symmetrize explicitly so
  // rounding noise cannot trip the constructor's validation.
  const Eigen::MatrixXd hp = m.matrix().transpose() * h.matrix() * m.matrix();
  return QuadHamiltonian(0.5 * (hp + hp.transpose()));
}

}  // namespace vacamp
