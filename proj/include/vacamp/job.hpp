#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "vacamp/errors.hpp"

namespace vacamp {

// Reorder a quadratic-coefficient matrix (congruence by the mode-interleaving
// permutation) or a phase-space vector between the two common quadrature
// conventions: "xxpp" = (x_1..x_M, p_1..p_M), "xpxp" = (x_1, p_1, .., x_M, p_M).
Eigen::MatrixXd convert_ordering(const Eigen::MatrixXd& h, const std::string& from,
                                 const std::string& to);
Eigen::VectorXd convert_ordering(const Eigen::VectorXd& v, const std::string& from,
                                 const std::string& to);

// Flag-level defaults that individual jobs may override.
struct JobDefaults {
  std::optional<std::string> method;  // constant-H jobs only
  std::optional<int> steps;           // schedule jobs
  std::optional<double> tol;
  std::optional<int> cutoff;          // method == fock_oracle
  bool emit_symplectic = false;
  std::string ordering = "xxpp";
};

// Evaluate one job object. Throws InvalidInput on schema/semantic violations
// and NumericalFailure when a numerical path breaks down.
nlohmann::json run_job(const nlohmann::json& job, const JobDefaults& defaults);

// Evaluate a single job or an array of jobs (output order matches input).
// Errors abort the whole run (no partial results); the failing array index is
// included in the exception message.
nlohmann::json run_jobs(const nlohmann::json& input, const JobDefaults& defaults);

}  // namespace vacamp
