#include "vacamp/amplitude.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vacamp/branch_sqrt.hpp"
#include "vacamp/decompositions.hpp"

namespace vacamp {

namespace {

constexpr Complex kI{0.0, 1.0};

double normalized_arg(const Complex& z) {
  double phase = std::arg(z);
  if (phase <= -std::numbers::pi) {
    phase = std::numbers::pi;
  }
  return phase;
}

void require_finite_time(double t, const char* where) {
  if (!std::isfinite(t)) {
    throw InvalidInput(std::string(where) + ": evolution time must be finite");
  }
}

// log(cosh x) without overflow for large |x|.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

// sin(x)/x for complex x, series near zero.
Complex sinc(const Complex& x) {
  if (std::abs(x) < 1e-2) {
    const Complex x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// Fill magnitude/phase and the vacuum-probability cross-check. Paths that
// already consumed the probability (the general path snaps its magnitude to
// it) pass fill_check = false and provide the check themselves.
AmplitudeResult finalize(const QuadHamiltonian& h, double t, const Complex& alpha,
                         Method method, Diagnostics diag, bool fill_check = true) {
  AmplitudeResult out;
  out.alpha = alpha;
  out.magnitude = std::abs(alpha);
  out.phase = normalized_arg(alpha);
  out.method = method;
  if (fill_check) {
    try {
      const double prob = vacuum_probability(heisenberg_symplectic(h, t));
      diag.magnitude_check = std::abs(out.magnitude - std::sqrt(prob));
      diag.magnitude_flagged = diag.magnitude_check > 1e-6;
    } catch (const std::exception&) {
      // Cross-check unavailable (e.g. overflow in exp(Omega H t) for extreme
      // squeezing); leave it unset rather than fail the primary result.
      diag.magnitude_check = std::numeric_limits<double>::quiet_NaN();
    }
  }
  out.diagnostics = diag;
  return out;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::passive: return "passive";
    case Method::active: return "active";
    case Method::single_mode: return "single_mode";
    case Method::williamson: return "williamson";
    case Method::general: return "general";
    case Method::fock_oracle: return "fock_oracle";
    case Method::time_dependent: return "time_dependent";
  }
  throw InvalidInput("to_string: unknown method");
}

Method method_from_string(const std::string& name) {
  if (name == "passive") return Method::passive;
  if (name == "active") return Method::active;
  if (name == "single_mode") return Method::single_mode;
  if (name == "williamson") return Method::williamson;
  if (name == "general") return Method::general;
  if (name == "fock_oracle") return Method::fock_oracle;
  if (name == "time_dependent") return Method::time_dependent;
  throw InvalidInput("unknown method name: " + name);
}

LadderForm ladder_form(const QuadHamiltonian& h) {
  const Eigen::MatrixXd e = h.block_xx();
  const Eigen::MatrixXd f = h.block_xp();
  const Eigen::MatrixXd g = h.block_pp();
  LadderForm lf;
  lf.f = 0.25 * ((e - g).cast<Complex>() + kI * (f + f.transpose()).cast<Complex>());
  lf.omega = 0.5 * ((e + g).cast<Complex>() + kI * (f.transpose() - f).cast<Complex>());
  lf.trace_term = 0.25 * h.matrix().trace();
  lf.modes = h.modes();
  lf.h_max_abs = h.max_abs();
  return lf;
}

Method classify(const QuadHamiltonian& h, double tol) {
  if (!(tol >= 0.0)) {
    throw InvalidInput("classify: tolerance must be nonnegative");
  }
  const LadderForm lf = ladder_form(h);
  const double scale = lf.h_max_abs;
  if (lf.f.cwiseAbs().maxCoeff() <= tol * scale) {
    return Method::passive;
  }
  if (lf.omega.cwiseAbs().maxCoeff() <= tol * scale) {
    return Method::active;
  }
  if (h.modes() == 1) {
    return Method::single_mode;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix(), Eigen::EigenvaluesOnly);
  const double definite_tol = 1e-10 * scale;
  if (es.eigenvalues()(0) > definite_tol ||
      es.eigenvalues()(2 * h.modes() - 1) < -definite_tol) {
    return Method::williamson;
  }
  return Method::general;
}

Eigen::MatrixXcd lambda_matrix(const LadderForm& lf) {
  // The diagonal blocks are (omega^T, -omega), not (0, -2 omega): the Riccati
  // flow for the symmetric pair-correlation matrix C reads
  //   i dC/dt = f + omega C + C omega^T + 4 C f^dag C
  // (match the a^dag a^dag coefficients of i dU/dt = H U in normal order; the
  // beam-splitter term acts from both sides of the symmetric C). The two
  // conventions differ by a scalar shift only for M = 1; for multimode omega
  // the off-scalar part matters and only this form reproduces the truncated
  // number-basis reference.
  const int m = lf.modes;
  Eigen::MatrixXcd lambda(2 * m, 2 * m);
  lambda.topLeftCorner(m, m) = lf.omega.transpose();
  lambda.topRightCorner(m, m) = 2.0 * lf.f.adjoint();
  lambda.bottomLeftCorner(m, m) = -2.0 * lf.f;
  lambda.bottomRightCorner(m, m) = -lf.omega;
  return lambda;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> propagate_rs(const Eigen::MatrixXcd& lambda,
                                                           double t) {
  if (lambda.rows() == 0 || lambda.rows() != lambda.cols() || lambda.rows() % 2 != 0) {
    throw InvalidInput("propagate_rs: Lambda must be square with even dimension");
  }
  const int m = static_cast<int>(lambda.rows()) / 2;
  const Eigen::MatrixXcd ex = matrix_exponential(Eigen::MatrixXcd(kI * t * lambda));
  return {ex.topLeftCorner(m, m), ex.bottomLeftCorner(m, m)};
}

AmplitudeResult amplitude_passive(const QuadHamiltonian& h, double t, double tol) {
  require_finite_time(t, "amplitude_passive");
  const LadderForm lf = ladder_form(h);
  if (lf.f.cwiseAbs().maxCoeff() > tol * lf.h_max_abs) {
    throw InvalidInput("amplitude_passive: Hamiltonian has a squeezing block (f != 0)");
  }
  const Complex alpha = std::polar(1.0, -t * lf.trace_term);
  return finalize(h, t, alpha, Method::passive, {});
}

AmplitudeResult amplitude_active(const QuadHamiltonian& h, double t, double tol) {
  require_finite_time(t, "amplitude_active");
  const LadderForm lf = ladder_form(h);
  if (lf.omega.cwiseAbs().maxCoeff() > tol * lf.h_max_abs) {
    throw InvalidInput("amplitude_active: Hamiltonian has a beam-splitter block (omega != 0)");
  }
  const TakagiFactors tk = takagi(2.0 * lf.f);
  double log_alpha = 0.0;
  for (int j = 0; j < tk.s.size(); ++j) {
    log_alpha -= 0.5 * log_cosh(tk.s(j) * t);
  }
  const Complex alpha(std::exp(log_alpha), 0.0);
  return finalize(h, t, alpha, Method::active, {});
}

AmplitudeResult amplitude_single_mode(const QuadHamiltonian& h, double t) {
  require_finite_time(t, "amplitude_single_mode");
  if (h.modes() != 1) {
    throw InvalidInput("amplitude_single_mode: Hamiltonian must have exactly one mode");
  }
  const double det_h = h.matrix()(0, 0) * h.matrix()(1, 1) - h.matrix()(0, 1) * h.matrix()(1, 0);
  const double tr_h = h.matrix().trace();
  const Complex root = std::sqrt(Complex(det_h, 0.0));
  const auto radicand = [&](double tau) -> Complex {
    return std::cos(root * tau) + kI * tau * (0.5 * tr_h) * sinc(root * tau);
  };
  const double rate_hint = std::abs(root) + 0.5 * std::abs(tr_h);
  const Complex alpha = 1.0 / tracked_sqrt(radicand, t, rate_hint);
  return finalize(h, t, alpha, Method::single_mode, {});
}

AmplitudeResult amplitude_williamson(const QuadHamiltonian& h, double t) {
  require_finite_time(t, "amplitude_williamson");
  // alpha(H, t) = alpha(-H, -t), so a negative definite H is folded onto the
  // positive definite factorization.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix(), Eigen::EigenvaluesOnly);
  const double definite_tol = 1e-10 * h.max_abs();
  double tw = t;
  std::optional<QuadHamiltonian> flipped;
  if (es.eigenvalues()(0) > definite_tol) {
    // positive definite: factor H directly
  } else if (es.eigenvalues()(2 * h.modes() - 1) < -definite_tol) {
    flipped.emplace(-h.matrix());
    tw = -t;
  } else {
    throw InvalidInput("amplitude_williamson: H must be definite (of either sign)");
  }

  const QuadHamiltonian& hw = flipped ? *flipped : h;
  const WilliamsonFactors wf = williamson(hw);
  const int m = hw.modes();
  const Eigen::MatrixXcd b =
      0.5 * (wf.t.matrix() * wf.t.matrix().transpose() - Eigen::MatrixXd::Identity(2 * m, 2 * m))
                .cast<Complex>();
  const auto radicand = [&](double tau) -> Complex {
    Eigen::VectorXcd k(2 * m);
    for (int j = 0; j < m; ++j) {
      const Complex val = std::exp(-kI * wf.d(j) * tau) - 1.0;
      k(j) = val;
      k(m + j) = val;
    }
    const Eigen::MatrixXcd mat =
        Eigen::MatrixXcd::Identity(2 * m, 2 * m) - k.asDiagonal() * b;
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(mat).determinant();
  };
  const double rate_hint = wf.d.sum() * (1.0 + 2.0 * m * b.cwiseAbs().maxCoeff());
  const Complex root = tracked_sqrt(radicand, tw, rate_hint);
  const Complex alpha = std::polar(1.0, -0.5 * tw * wf.d.sum()) / root;
  return finalize(h, t, alpha, Method::williamson, {});
}

AmplitudeResult amplitude_general(const QuadHamiltonian& h, double t,
                                  const QuadratureConfig& cfg) {
  require_finite_time(t, "amplitude_general");
  Diagnostics diag;
  if (t == 0.0) {
    return finalize(h, t, Complex(1.0, 0.0), Method::general, diag, false);
  }
  const LadderForm lf = ladder_form(h);
  const Eigen::MatrixXcd lambda = lambda_matrix(lf);
  const Eigen::MatrixXcd fdag = lf.f.adjoint();
  double min_abs_det = std::numeric_limits<double>::infinity();

  const auto integrand = [&](double tau) -> Complex {
    const auto [r, s] = propagate_rs(lambda, tau);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(r);
    const double abs_det = std::abs(lu.determinant());
    min_abs_det = std::min(min_abs_det, abs_det);
    if (abs_det < 1e-300) {
      throw NumericalFailure("amplitude_general: det R vanished at t = " +
                             std::to_string(tau) + " (zero-crossing of the amplitude)");
    }
    return lf.trace_term + (lu.solve(fdag * s)).trace();
  };

  const QuadratureOutcome quad = integrate_adaptive(integrand, 0.0, t, cfg);
  if (!quad.converged) {
    throw NumericalFailure("amplitude_general: quadrature did not converge (estimate " +
                           std::to_string(quad.error_estimate) + " after " +
                           std::to_string(quad.subdivisions) + " subdivisions)");
  }
  const Complex alpha_quad = std::exp(-kI * quad.value);

  // The magnitude has an exact expression through the symplectic propagator;
  // report that, keep the quadrature magnitude as a consistency check.
  const double prob = vacuum_probability(heisenberg_symplectic(h, t));
  const double magnitude = std::sqrt(prob);
  diag.quad_error = quad.error_estimate;
  diag.subdivisions = quad.subdivisions;
  diag.min_abs_det_r = min_abs_det;
  diag.magnitude_check = std::abs(std::abs(alpha_quad) - magnitude);
  diag.magnitude_flagged = diag.magnitude_check > 1e-6;
  const Complex alpha = std::polar(magnitude, std::arg(alpha_quad));
  return finalize(h, t, alpha, Method::general, diag, false);
}

AmplitudeResult vacuum_amplitude(const QuadHamiltonian& h, double t,
                                 const AmplitudeOptions& options) {
  const Method method = options.method.value_or(classify(h, options.classify_tol));
  switch (method) {
    case Method::passive:
      return amplitude_passive(h, t, options.classify_tol);
    case Method::active:
      return amplitude_active(h, t, options.classify_tol);
    case Method::single_mode:
      return amplitude_single_mode(h, t);
    case Method::williamson:
      return amplitude_williamson(h, t);
    case Method::general:
      return amplitude_general(h, t, options.quadrature);
    case Method::fock_oracle:
      throw InvalidInput(
          "vacuum_amplitude: fock_oracle is a reference implementation, not an "
          "amplitude method; call the oracle module directly");
    case Method::time_dependent:
      throw InvalidInput(
          "vacuum_amplitude: time_dependent applies to schedules; use "
          "amplitude_time_dependent");
  }
  throw InvalidInput("vacuum_amplitude: unknown method");
}

}  // namespace vacamp
