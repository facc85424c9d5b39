#pragma once

#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "vacamp/quadrature.hpp"
#include "vacamp/symplectic.hpp"

namespace vacamp {

// Evaluation strategies for the vacuum persistence amplitude
// alpha(t) = <0| exp(-(i/2 hbar) r^T H r t) |0>. The first five are exact
// closed forms / reductions; fock_oracle is the truncated number-basis
// reference (never chosen automatically).
enum class Method {
  passive,         // H commutes with the photon number: pure phase
  active,          // pure squeezing: real positive amplitude
  single_mode,     // M = 1 closed form
  williamson,      // positive (or negative) definite H via normal-mode phases
  general,         // phase integral of the Riccati-type ladder flow
  fock_oracle,     // truncated Fock-space matrix exponential
  time_dependent,  // trotterized evolution of a schedule (reported, not forced)
};

std::string to_string(Method m);
Method method_from_string(const std::string& name);

// Ladder-operator coefficients of (1/2 hbar) r^T H r =
// (1/hbar) [a^dag^T omega a + a^dag^T f a^dag + a^T conj(f) a + tr H / 4]:
// omega Hermitian, f complex symmetric, both M x M.
struct LadderForm {
  Eigen::MatrixXcd f;
  Eigen::MatrixXcd omega;
  double trace_term = 0.0;  // tr H / 4
  int modes = 0;
  double h_max_abs = 0.0;
};

LadderForm ladder_form(const QuadHamiltonian& h);

// Method selection for automatic dispatch, in priority order
// passive > active > single_mode > williamson > general. Thresholds are
// relative to max|H|: tol for the f / omega vanishing tests, 1e-10 for
// definiteness. Never returns fock_oracle.
Method classify(const QuadHamiltonian& h, double tol = 1e-12);

// Flow matrix Lambda = [[0, 2 f^dag], [-2 f, -2 omega]] whose exponential
// exp(i Lambda t) carries the vacuum-matrix-element dynamics.
Eigen::MatrixXcd lambda_matrix(const LadderForm& lf);

// First block column (R; S) of exp(i Lambda t), each M x M.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> propagate_rs(const Eigen::MatrixXcd& lambda,
                                                           double t);

struct Diagnostics {
  double quad_error = 0.0;       // integrator error estimate (general path)
  int subdivisions = 0;          // adaptive quadrature splits
  double min_abs_det_r = 1.0;    // smallest |det R| seen along the flow
  double magnitude_check = 0.0;  // | |alpha| - sqrt(vacuum probability) |
  bool magnitude_flagged = false;
  double oracle_convergence = 0.0;  // cutoff-(N) vs cutoff-(N-4) gap (fock)
  bool oracle_converged = true;
};

struct AmplitudeResult {
  Complex alpha{1.0, 0.0};
  double magnitude = 1.0;
  double phase = 0.0;  // arg(alpha) in (-pi, pi]
  Method method = Method::general;
  Diagnostics diagnostics;
};

struct AmplitudeOptions {
  std::optional<Method> method;  // force a path instead of classify()
  double classify_tol = 1e-12;
  QuadratureConfig quadrature;
};

// Closed forms, each validating that its own premise holds
// (throws InvalidInput on a misrouted Hamiltonian). The premises are weaker
// than classification: amplitude_passive needs f ~ 0, amplitude_active needs
// omega ~ 0, amplitude_single_mode needs M == 1, amplitude_williamson needs
// H definite of either sign.
AmplitudeResult amplitude_passive(const QuadHamiltonian& h, double t, double tol = 1e-12);
AmplitudeResult amplitude_active(const QuadHamiltonian& h, double t, double tol = 1e-12);
AmplitudeResult amplitude_single_mode(const QuadHamiltonian& h, double t);
AmplitudeResult amplitude_williamson(const QuadHamiltonian& h, double t);

// Phase-integral evaluation valid for every quadratic H; magnitude is taken
// from vacuum_probability (exact in terms of the symplectic propagator) with
// the quadrature magnitude kept as a cross-check in diagnostics.
AmplitudeResult amplitude_general(const QuadHamiltonian& h, double t,
                                  const QuadratureConfig& cfg = {});

// Front door: dispatches on classify(h) or options.method. Method::fock_oracle
// is not dispatched here (the oracle lives in its own module and is wired up
// at the job layer); requesting it throws InvalidInput.
AmplitudeResult vacuum_amplitude(const QuadHamiltonian& h, double t,
                                 const AmplitudeOptions& options = {});

}  // namespace vacamp
