#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "vacamp/amplitude.hpp"
#include "vacamp/symplectic.hpp"

namespace vacamp {

// Time-dependent coefficient matrix H(t), given either as a callable rule or
// as a knot table with linear interpolation. Every sample goes through the
// QuadHamiltonian validation (symmetry, finiteness, fixed mode count).
class HamiltonianSchedule {
 public:
  using Rule = std::function<Eigen::MatrixXd(double)>;

  static HamiltonianSchedule from_rule(int modes, Rule rule);

  // Knot times must start at 0 and increase strictly; all matrices must be
  // symmetric and share one dimension 2M.
  static HamiltonianSchedule from_table(std::vector<double> times,
                                        std::vector<Eigen::MatrixXd> values);

  int modes() const { return modes_; }

  // Sample H(t); tables interpolate linearly and clamp outside the knot span.
  QuadHamiltonian at(double t) const;

  // Last knot time for tables, nullopt for rules.
  std::optional<double> horizon() const;

 private:
  HamiltonianSchedule() = default;
  int modes_ = 0;
  Rule rule_;
  std::vector<double> times_;
  std::vector<Eigen::MatrixXd> values_;
};

struct TrotterConfig {
  int steps = 512;          // uniform splitting steps over [0, t]
  bool richardson = false;  // extrapolate the phase integral from steps and 2*steps
};

// Running first block column (R_k; S_k) of the midpoint-rule product
// prod_k exp(i Lambda(H((k-1/2) dt)) dt), recorded at every grid node
// t_k = k dt, k = 0..steps (so r.front() = I, s.front() = 0).
struct RsTrajectory {
  double dt = 0.0;
  std::vector<Eigen::MatrixXcd> r;
  std::vector<Eigen::MatrixXcd> s;
};

// Requires t > 0. Second-order accurate in dt.
RsTrajectory propagate_rs_td(const HamiltonianSchedule& schedule, double t,
                             const TrotterConfig& cfg = {});

// Vacuum amplitude for the schedule: the phase integrand
// g(t') = tr H(t')/4 + tr(f(t')^dag S(t') R(t')^{-1}) is sampled on the
// trotter grid and integrated with composite Simpson (3/8 tail for an odd
// step count, trapezoid for a single step). The magnitude is cross-checked
// against the vacuum probability of the real trotterized propagator; the
// check lands in diagnostics.magnitude_check (flagged above 1e-4, since both
// sides carry O(dt^2) error). t = 0 returns alpha = 1 exactly.
AmplitudeResult amplitude_time_dependent(const HamiltonianSchedule& schedule, double t,
                                         const TrotterConfig& cfg = {});

}  // namespace vacamp
