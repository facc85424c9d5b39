#include "vacamp/fock_oracle.hpp"

#include <cmath>
#include <string>

#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

#include "vacamp/amplitude.hpp"

namespace vacamp {

namespace {

constexpr long kDimensionCap = 4096;
constexpr Complex kI{0.0, 1.0};

using SparseCd = Eigen::SparseMatrix<Complex>;

SparseCd sparse_identity(long dim) {
  SparseCd id(dim, dim);
  id.setIdentity();
  return id;
}

// Annihilation operator of mode j embedded in the tensor-product space.
SparseCd mode_annihilation(int j, const FockConfig& cfg) {
  const long local = cfg.cutoff + 1;
  SparseCd a(local, local);
  a.reserve(Eigen::VectorXi::Constant(local, 1));
  for (long n = 1; n < local; ++n) {
    a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  a.makeCompressed();

  long left = 1;
  for (int k = 0; k < j; ++k) left *= local;
  long right = 1;
  for (int k = j + 1; k < cfg.modes; ++k) right *= local;
  return Eigen::kroneckerProduct(sparse_identity(left),
                                 SparseCd(Eigen::kroneckerProduct(a, sparse_identity(right))))
      .eval();
}

SparseCd sparse_generator(const QuadHamiltonian& h, const FockConfig& cfg) {
  const int m = cfg.modes;
  const LadderForm lf = ladder_form(h);
  std::vector<SparseCd> a(m), ad(m);
  for (int j = 0; j < m; ++j) {
    a[j] = mode_annihilation(j, cfg);
    ad[j] = SparseCd(a[j].adjoint());
  }
  SparseCd gen = SparseCd(Complex(lf.trace_term, 0.0) * sparse_identity(cfg.dimension()));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (lf.omega(i, j) != Complex(0.0, 0.0)) {
        gen = SparseCd(gen + SparseCd(lf.omega(i, j) * SparseCd(ad[i] * a[j])));
      }
      if (lf.f(i, j) != Complex(0.0, 0.0)) {
        gen = SparseCd(gen + SparseCd(lf.f(i, j) * SparseCd(ad[i] * ad[j])));
        gen = SparseCd(gen + SparseCd(std::conj(lf.f(i, j)) * SparseCd(a[i] * a[j])));
      }
    }
  }
  gen.makeCompressed();
  return gen;
}

double sparse_one_norm(const SparseCd& a) {
  double best = 0.0;
  for (int k = 0; k < a.outerSize(); ++k) {
    double col = 0.0;
    for (SparseCd::InnerIterator it(a, k); it; ++it) {
      col += std::abs(it.value());
    }
    best = std::max(best, col);
  }
  return best;
}

// <e_0| exp(-i t G) |e_0> by scaled Taylor stepping; G is Hermitian so the
// state norm is conserved and the recurrence is stable.
Complex vacuum_matrix_element(const SparseCd& gen, double t) {
  const long dim = gen.rows();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(0) = 1.0;
  const double scale = sparse_one_norm(gen) * std::abs(t);
  const int steps = std::max(1, static_cast<int>(std::ceil(scale / 0.8)));
  const Complex step_factor = -kI * (t / steps);
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXcd term = psi;
    Eigen::VectorXcd next = psi;
    for (int k = 1; k <= 80; ++k) {
      term = (step_factor / static_cast<double>(k)) * (gen * term).eval();
      next += term;
      if (term.norm() <= 1e-18 * next.norm()) {
        break;
      }
    }
    psi = next;
  }
  return psi(0);
}

Complex oracle_alpha_at_cutoff(const QuadHamiltonian& h, double t, const FockConfig& cfg) {
  const SparseCd gen = sparse_generator(h, cfg);
  // Beyond this the accumulated phase loses double-precision meaning (and the
  // stepping scheme would grind forever), so refuse rather than mislead.
  if (sparse_one_norm(gen) * std::abs(t) > 1e7) {
    throw NumericalFailure("fock oracle: |t| * norm(H) too large to evolve accurately");
  }
  if (cfg.dimension() <= 256) {
    const Eigen::MatrixXcd u =
        matrix_exponential(Eigen::MatrixXcd(-kI * t * Eigen::MatrixXcd(gen)));
    return u(0, 0);
  }
  return vacuum_matrix_element(gen, t);
}

}  // namespace

void FockConfig::validate() const {
  if (cutoff < 4) {
    throw InvalidInput("FockConfig: cutoff must be >= 4, got " + std::to_string(cutoff));
  }
  if (modes < 1) {
    throw InvalidInput("FockConfig: modes must be >= 1, got " + std::to_string(modes));
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw InvalidInput("FockConfig: hbar must be positive and finite");
  }
  if (dimension() > kDimensionCap) {
    throw InvalidInput("FockConfig: dimension (cutoff+1)^modes = " +
                       std::to_string(dimension()) + " exceeds the cap of " +
                       std::to_string(kDimensionCap));
  }
}

long FockConfig::dimension() const {
  long dim = 1;
  for (int k = 0; k < modes; ++k) {
    dim *= cutoff + 1;
    if (dim > (1L << 40)) {
      return dim;  // already hopeless; avoid overflow
    }
  }
  return dim;
}

Eigen::MatrixXd ladder_matrix(int cutoff) {
  if (cutoff < 0) {
    throw InvalidInput("ladder_matrix: cutoff must be nonnegative");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

std::vector<Eigen::MatrixXcd> quadrature_operators(const FockConfig& cfg) {
  cfg.validate();
  const double c = std::sqrt(cfg.hbar / 2.0);
  std::vector<Eigen::MatrixXcd> ops(2 * cfg.modes);
  for (int j = 0; j < cfg.modes; ++j) {
    const Eigen::MatrixXcd a = mode_annihilation(j, cfg);
    ops[j] = c * (a + a.adjoint());                       // x_j
    ops[cfg.modes + j] = -kI * c * (a - a.adjoint());     // p_j
  }
  return ops;
}

Eigen::MatrixXcd build_hamiltonian_fock(const QuadHamiltonian& h, const FockConfig& cfg) {
  cfg.validate();
  if (h.modes() != cfg.modes) {
    throw InvalidInput("build_hamiltonian_fock: mode count mismatch");
  }
  return Eigen::MatrixXcd(sparse_generator(h, cfg));
}

Eigen::MatrixXcd build_weyl_fock(const Eigen::VectorXd& xi, const FockConfig& cfg) {
  cfg.validate();
  if (xi.size() != 2 * cfg.modes) {
    throw InvalidInput("build_weyl_fock: xi must have length 2 * modes");
  }
  if (!xi.allFinite()) {
    throw InvalidInput("build_weyl_fock: xi has non-finite entries");
  }
  // W(xi) = exp((i/hbar) rhat^T Omega xi), so the coefficient of rhat_j is
  // (Omega xi)_j; the transpose would build W(-xi) instead (the composition
  // law is blind to that flip, the displacement direction is not).
  const std::vector<Eigen::MatrixXcd> ops = quadrature_operators(cfg);
  const Eigen::VectorXd coeff = omega_matrix(cfg.modes) * xi;
  const long dim = cfg.dimension();
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < 2 * cfg.modes; ++j) {
    gen += coeff(j) * ops[j];
  }
  return matrix_exponential(Eigen::MatrixXcd((kI / cfg.hbar) * gen));
}

OracleAmplitude vacuum_amplitude_fock(const QuadHamiltonian& h, double t,
                                      const FockConfig& cfg, double tol) {
  cfg.validate();
  if (h.modes() != cfg.modes) {
    throw InvalidInput("vacuum_amplitude_fock: mode count mismatch");
  }
  if (!(tol > 0.0)) {
    throw InvalidInput("vacuum_amplitude_fock: tolerance must be positive");
  }
  OracleAmplitude out;
  out.alpha = oracle_alpha_at_cutoff(h, t, cfg);
  FockConfig reduced = cfg;
  reduced.cutoff = cfg.cutoff - 4;
  const Complex alpha_reduced =
      reduced.cutoff >= 0 ? oracle_alpha_at_cutoff(h, t, reduced) : Complex(1.0, 0.0);
  out.convergence_estimate = std::abs(out.alpha - alpha_reduced);
  out.converged = out.convergence_estimate <= tol;
  return out;
}

}  // namespace vacamp
