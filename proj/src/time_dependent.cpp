#include "vacamp/time_dependent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace vacamp {

namespace {

constexpr Complex kI{0.0, 1.0};

void validate_trotter(const TrotterConfig& cfg) {
  if (cfg.steps < 1 || cfg.steps > (1 << 20)) {
    throw InvalidInput("TrotterConfig: steps must be in [1, 2^20], got " +
                       std::to_string(cfg.steps));
  }
}

// Composite Simpson over n uniform intervals of width dt; falls back to the
// 3/8 rule on the last three intervals when n is odd, trapezoid for n = 1.
Complex simpson(const std::vector<Complex>& g, double dt) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n == 1) {
    return 0.5 * dt * (g[0] + g[1]);
  }
  Complex total{0.0, 0.0};
  int even_end = n;  // integrate [0, even_end] with Simpson pairs
  if (n % 2 == 1) {
    even_end = n - 3;
    total += (3.0 * dt / 8.0) * (g[n - 3] + 3.0 * g[n - 2] + 3.0 * g[n - 1] + g[n]);
  }
  for (int k = 0; k + 2 <= even_end; k += 2) {
    total += (dt / 3.0) * (g[k] + 4.0 * g[k + 1] + g[k + 2]);
  }
  return total;
}

struct TdRun {
  Complex integral{0.0, 0.0};
  double min_abs_det_r = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd trotter_symplectic;  // product of exp(Omega H dt) factors
};

TdRun run_grid(const HamiltonianSchedule& schedule, double t, int steps) {
  const int m = schedule.modes();
  const double dt = t / steps;
  Eigen::MatrixXcd y(2 * m, m);
  y.topRows(m) = Eigen::MatrixXcd::Identity(m, m);
  y.bottomRows(m).setZero();
  Eigen::MatrixXd trotter = Eigen::MatrixXd::Identity(2 * m, 2 * m);
  const Eigen::MatrixXd omega = omega_matrix(m);

  std::vector<Complex> g(steps + 1);
  TdRun run;

  const auto sample_g = [&](int k) {
    const LadderForm lf = ladder_form(schedule.at(k * dt));
    const Eigen::MatrixXcd r = y.topRows(m);
    const Eigen::MatrixXcd s = y.bottomRows(m);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(r);
    const double abs_det = std::abs(lu.determinant());
    run.min_abs_det_r = std::min(run.min_abs_det_r, abs_det);
    if (abs_det < 1e-300) {
      throw NumericalFailure("amplitude_time_dependent: det R vanished at t = " +
                             std::to_string(k * dt));
    }
    g[k] = lf.trace_term + lu.solve(lf.f.adjoint() * s).trace();
  };

  sample_g(0);
  for (int k = 1; k <= steps; ++k) {
    const QuadHamiltonian h_mid = schedule.at((k - 0.5) * dt);
    const Eigen::MatrixXcd step =
        matrix_exponential(Eigen::MatrixXcd(kI * dt * lambda_matrix(ladder_form(h_mid))));
    y = step * y;
    trotter = matrix_exponential(Eigen::MatrixXd(omega * h_mid.matrix() * dt)) * trotter;
    sample_g(k);
  }
  run.integral = simpson(g, dt);
  run.trotter_symplectic = std::move(trotter);
  return run;
}

}  // namespace

HamiltonianSchedule HamiltonianSchedule::from_rule(int modes, Rule rule) {
  if (modes < 1) {
    throw InvalidInput("HamiltonianSchedule: modes must be >= 1");
  }
  if (!rule) {
    throw InvalidInput("HamiltonianSchedule: rule must be callable");
  }
  HamiltonianSchedule s;
  s.modes_ = modes;
  s.rule_ = std::move(rule);
  return s;
}

HamiltonianSchedule HamiltonianSchedule::from_table(std::vector<double> times,
                                                    std::vector<Eigen::MatrixXd> values) {
  if (times.empty() || times.size() != values.size()) {
    throw InvalidInput("HamiltonianSchedule: need matching nonempty times/values");
  }
  if (times.front() != 0.0) {
    throw InvalidInput("HamiltonianSchedule: table must start at t = 0");
  }
  for (size_t k = 0; k + 1 < times.size(); ++k) {
    if (!(times[k] < times[k + 1])) {
      throw InvalidInput("HamiltonianSchedule: knot times must increase strictly");
    }
  }
  const QuadHamiltonian first(values.front());  // validates shape/symmetry
  for (const auto& v : values) {
    const QuadHamiltonian sample(v);
    if (sample.modes() != first.modes()) {
      throw InvalidInput("HamiltonianSchedule: all knots must share one dimension");
    }
  }
  HamiltonianSchedule s;
  s.modes_ = first.modes();
  s.times_ = std::move(times);
  s.values_ = std::move(values);
  return s;
}

QuadHamiltonian HamiltonianSchedule::at(double t) const {
  if (!std::isfinite(t)) {
    throw InvalidInput("HamiltonianSchedule: sample time must be finite");
  }
  if (rule_) {
    const QuadHamiltonian h(rule_(t));
    if (h.modes() != modes_) {
      throw InvalidInput("HamiltonianSchedule: rule returned a matrix of wrong dimension");
    }
    return h;
  }
  if (t <= times_.front()) {
    return QuadHamiltonian(values_.front());
  }
  if (t >= times_.back()) {
    return QuadHamiltonian(values_.back());
  }
  const auto hi = std::upper_bound(times_.begin(), times_.end(), t);
  const size_t k = static_cast<size_t>(hi - times_.begin());
  const double w = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
  return QuadHamiltonian((1.0 - w) * values_[k - 1] + w * values_[k]);
}

std::optional<double> HamiltonianSchedule::horizon() const {
  if (rule_) {
    return std::nullopt;
  }
  return times_.back();
}

RsTrajectory propagate_rs_td(const HamiltonianSchedule& schedule, double t,
                             const TrotterConfig& cfg) {
  validate_trotter(cfg);
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InvalidInput("propagate_rs_td: t must be positive and finite");
  }
  const int m = schedule.modes();
  const double dt = t / cfg.steps;
  RsTrajectory traj;
  traj.dt = dt;
  traj.r.reserve(cfg.steps + 1);
  traj.s.reserve(cfg.steps + 1);

  Eigen::MatrixXcd y(2 * m, m);
  y.topRows(m) = Eigen::MatrixXcd::Identity(m, m);
  y.bottomRows(m).setZero();
  traj.r.push_back(y.topRows(m));
  traj.s.push_back(y.bottomRows(m));
  for (int k = 1; k <= cfg.steps; ++k) {
    const QuadHamiltonian h_mid = schedule.at((k - 0.5) * dt);
    const Eigen::MatrixXcd step =
        matrix_exponential(Eigen::MatrixXcd(kI * dt * lambda_matrix(ladder_form(h_mid))));
    y = step * y;
    traj.r.push_back(y.topRows(m));
    traj.s.push_back(y.bottomRows(m));
  }
  return traj;
}

AmplitudeResult amplitude_time_dependent(const HamiltonianSchedule& schedule, double t,
                                         const TrotterConfig& cfg) {
  validate_trotter(cfg);
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidInput("amplitude_time_dependent: t must be nonnegative and finite");
  }
  AmplitudeResult out;
  out.method = Method::time_dependent;
  if (t == 0.0) {
    return out;
  }

  TdRun coarse = run_grid(schedule, t, cfg.steps);
  Complex integral = coarse.integral;
  Diagnostics diag;
  diag.min_abs_det_r = coarse.min_abs_det_r;
  diag.subdivisions = cfg.steps;
  Eigen::MatrixXd trotter = std::move(coarse.trotter_symplectic);
  if (cfg.richardson) {
    TdRun fine = run_grid(schedule, t, 2 * cfg.steps);
    diag.quad_error = std::abs(fine.integral - coarse.integral);
    integral = (4.0 * fine.integral - coarse.integral) / 3.0;
    diag.min_abs_det_r = std::min(diag.min_abs_det_r, fine.min_abs_det_r);
    diag.subdivisions = 2 * cfg.steps;
    trotter = std::move(fine.trotter_symplectic);
  }

  const Complex alpha = std::exp(-kI * integral);
  out.alpha = alpha;
  out.magnitude = std::abs(alpha);
  out.phase = std::arg(alpha);
  if (out.phase <= -std::numbers::pi) {
    out.phase = std::numbers::pi;
  }
  try {
    const double prob = vacuum_probability(SymplecticMatrix(trotter));
    diag.magnitude_check = std::abs(out.magnitude - std::sqrt(prob));
    diag.magnitude_flagged = diag.magnitude_check > 1e-4;
  } catch (const std::exception&) {
    diag.magnitude_check = std::numeric_limits<double>::quiet_NaN();
  }
  out.diagnostics = diag;
  return out;
}

}  // namespace vacamp
