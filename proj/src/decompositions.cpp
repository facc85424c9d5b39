#include "vacamp/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace vacamp {

namespace {

// J acts on the real embedding of C^M as (x; y) -> (-y; x), i.e. as
// multiplication by i on w = x + iy. It anticommutes with the embedded
// matrix, mapping eigenvectors of eigenvalue s to eigenvectors of -s.
Eigen::VectorXd apply_j(const Eigen::VectorXd& v) {
  const int m = static_cast<int>(v.size()) / 2;
  Eigen::VectorXd out(v.size());
  out.head(m) = -v.tail(m);
  out.tail(m) = v.head(m);
  return out;
}

Eigen::VectorXd project_out(const Eigen::VectorXd& v,
                            const std::vector<Eigen::VectorXd>& basis) {
  Eigen::VectorXd r = v;
  for (const auto& b : basis) {
    r -= b.dot(r) * b;
  }
  return r;
}

}  // namespace

WilliamsonFactors williamson(const QuadHamiltonian& h) {
  const int m = h.modes();
  const Eigen::MatrixXd& hm = h.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hm);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("williamson: eigendecomposition of H failed");
  }
  if (es.eigenvalues()(0) <= 1e-10 * h.max_abs()) {
    throw InvalidInput("williamson: H must be positive definite (min eigenvalue " +
                       std::to_string(es.eigenvalues()(0)) + ")");
  }

  // P = H^{1/2}; A = P Omega P is antisymmetric, so iA is Hermitian with
  // spectrum {+-d_j} given by the symplectic eigenvalues of H.
  const Eigen::MatrixXd p = es.operatorSqrt();
  const Eigen::MatrixXd a = p * omega_matrix(m) * p;
  const Eigen::MatrixXcd ia = Complex(0.0, 1.0) * a.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esc(ia);
  if (esc.info() != Eigen::Success) {
    throw NumericalFailure("williamson: eigendecomposition of i P Omega P failed");
  }

  // Eigenvalues ascend, so the positive half sits in the top M slots; walk
  // them in reverse for descending d. Splitting v = (u + i w)/sqrt(2) turns
  // the orthonormal eigenvectors into a symplectic basis Q = [u | -w].
  Eigen::VectorXd d(m);
  Eigen::MatrixXd q(2 * m, 2 * m);
  for (int j = 0; j < m; ++j) {
    const int k = 2 * m - 1 - j;
    d(j) = esc.eigenvalues()(k);
    const Eigen::VectorXcd v = esc.eigenvectors().col(k);
    q.col(j) = std::sqrt(2.0) * v.real();
    q.col(m + j) = -std::sqrt(2.0) * v.imag();
  }

  Eigen::VectorXd d_inv_sqrt(2 * m);
  d_inv_sqrt << d.cwiseInverse().cwiseSqrt(), d.cwiseInverse().cwiseSqrt();
  const Eigen::MatrixXd t = d_inv_sqrt.asDiagonal() * q.transpose() * p;

  Eigen::VectorXd dd(2 * m);
  dd << d, d;
  const double recon =
      (t.transpose() * dd.asDiagonal() * t - hm).cwiseAbs().maxCoeff();
  if (recon > 1e-8 * std::max(1.0, h.max_abs())) {
    throw NumericalFailure("williamson: reconstruction residual " +
                           std::to_string(recon) + " out of tolerance");
  }
  return WilliamsonFactors{SymplecticMatrix(t), std::move(d)};
}

TakagiFactors takagi(const Eigen::MatrixXcd& f) {
  if (f.rows() == 0 || f.rows() != f.cols()) {
    throw InvalidInput("takagi: expected a nonempty square matrix");
  }
  if (!f.allFinite()) {
    throw InvalidInput("takagi: matrix has non-finite entries");
  }
  const int m = static_cast<int>(f.rows());
  const double scale = f.cwiseAbs().maxCoeff();
  if ((f - f.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidInput("takagi: matrix is not complex symmetric");
  }
  const Eigen::MatrixXcd fs = 0.5 * (f + f.transpose());

  // Real embedding: R = [[Re F, Im F], [Im F, -Re F]] is real symmetric with
  // spectrum {+-s_j}; a unit eigenvector (x; y) at +s yields the Takagi
  // vector w = x + iy with F conj(w) = s w.
  Eigen::MatrixXd r(2 * m, 2 * m);
  r.topLeftCorner(m, m) = fs.real();
  r.topRightCorner(m, m) = fs.imag();
  r.bottomLeftCorner(m, m) = fs.imag();
  r.bottomRightCorner(m, m) = -fs.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("takagi: eigendecomposition of the real embedding failed");
  }

  const double s_max = es.eigenvalues().cwiseAbs().maxCoeff();
  const double zero_tol = 1e-12 * s_max;
  int n_direct = 0;  // eigenvalues cleanly separated from the zero cluster
  while (n_direct < m && es.eigenvalues()(2 * m - 1 - n_direct) > zero_tol) {
    ++n_direct;
  }

  std::vector<std::pair<double, Eigen::VectorXcd>> modes;
  modes.reserve(m);
  for (int j = 0; j < n_direct; ++j) {
    const Eigen::VectorXd v = es.eigenvectors().col(2 * m - 1 - j);
    Eigen::VectorXcd w = v.head(m) + Complex(0.0, 1.0) * v.tail(m);
    modes.emplace_back(es.eigenvalues()(2 * m - 1 - j), std::move(w));
  }

  // Near-zero eigenvalues of the embedding come in +-pairs that the solver
  // may mix arbitrarily, breaking the (x; y) pairing. Rebuild that subspace
  // with a Gram-Schmidt pass that keeps it closed under J: every selected
  // vector v is committed together with J v, and only v becomes a column.
  if (n_direct < m) {
    const int cluster_size = 2 * (m - n_direct);
    std::vector<Eigen::VectorXd> basis;
    basis.reserve(cluster_size);
    while (static_cast<int>(basis.size()) < cluster_size) {
      // Greedy pick: the cluster column least represented by the basis so far.
      Eigen::VectorXd best;
      double best_norm = -1.0;
      for (int c = n_direct; c < n_direct + cluster_size; ++c) {
        Eigen::VectorXd cand = project_out(es.eigenvectors().col(c), basis);
        if (cand.norm() > best_norm) {
          best_norm = cand.norm();
          best = std::move(cand);
        }
      }
      if (best_norm < 1e-6) {
        throw NumericalFailure("takagi: zero-space reconstruction is rank deficient");
      }
      best.normalize();
      Eigen::VectorXd jbest = project_out(apply_j(best), basis);
      jbest -= best.dot(jbest) * best;
      if (jbest.norm() < 0.5) {
        throw NumericalFailure("takagi: zero-space pairing degenerated");
      }
      jbest.normalize();
      basis.push_back(best);
      basis.push_back(jbest);
      const Eigen::VectorXd& v = basis[basis.size() - 2];
      Eigen::VectorXcd w = v.head(m) + Complex(0.0, 1.0) * v.tail(m);
      const double s = std::max(0.0, std::real(w.dot(fs * w.conjugate())));
      modes.emplace_back(s, std::move(w));
    }
  }

  std::stable_sort(modes.begin(), modes.end(),
                   [](const auto& lhs, const auto& rhs) { return lhs.first > rhs.first; });

  TakagiFactors out{Eigen::MatrixXcd(m, m), Eigen::VectorXd(m)};
  for (int j = 0; j < m; ++j) {
    out.s(j) = modes[j].first;
    out.w.col(j) = modes[j].second;
  }

  const double unitarity =
      (out.w.adjoint() * out.w - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  const double recon =
      (out.w * out.s.asDiagonal() * out.w.transpose() - fs).cwiseAbs().maxCoeff();
  if (unitarity > 1e-9 || recon > 1e-8 * std::max(1.0, scale)) {
    throw NumericalFailure("takagi: factor validation failed (unitarity " +
                           std::to_string(unitarity) + ", reconstruction " +
                           std::to_string(recon) + ")");
  }
  return out;
}

}  // namespace vacamp
