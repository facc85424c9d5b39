#include "vacamp/job.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vacamp/amplitude.hpp"
#include "vacamp/fock_oracle.hpp"
#include "vacamp/linear_terms.hpp"
#include "vacamp/symplectic.hpp"
#include "vacamp/time_dependent.hpp"

namespace vacamp {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const char* what) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (allowed.find(it.key()) == allowed.end()) {
      throw InvalidInput(std::string(what) + ": unknown key '" + it.key() + "'");
    }
  }
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) {
    throw InvalidInput(what + " must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw InvalidInput(what + " must be finite");
  }
  return x;
}

int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) {
    throw InvalidInput(what + " must be an integer");
  }
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string()) {
    throw InvalidInput(what + " must be a string");
  }
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& what) {
  if (!v.is_boolean()) {
    throw InvalidInput(what + " must be a boolean");
  }
  return v.get<bool>();
}

Eigen::MatrixXd as_matrix(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) {
    throw InvalidInput(what + " must be a nonempty array of rows");
  }
  const size_t rows = v.size();
  if (!v[0].is_array() || v[0].empty()) {
    throw InvalidInput(what + " rows must be nonempty arrays");
  }
  const size_t cols = v[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) {
      throw InvalidInput(what + " must be rectangular");
    }
    for (size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          as_number(v[i][j], what + " entry");
    }
  }
  return m;
}

Eigen::VectorXd as_vector(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) {
    throw InvalidInput(what + " must be a nonempty array");
  }
  Eigen::VectorXd out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = as_number(v[i], what + " entry");
  }
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

std::string validated_ordering(const std::string& name, const std::string& what) {
  if (name != "xxpp" && name != "xpxp") {
    throw InvalidInput(what + ": ordering must be 'xxpp' or 'xpxp', got '" + name + "'");
  }
  return name;
}

json diagnostics_json(const AmplitudeResult& res) {
  json d = json::object();
  const Diagnostics& g = res.diagnostics;
  if (res.method == Method::general || res.method == Method::time_dependent) {
    d["quad_error"] = g.quad_error;
    d["subdivisions"] = g.subdivisions;
    d["min_abs_det_r"] = g.min_abs_det_r;
  }
  if (!std::isnan(g.magnitude_check)) {
    d["magnitude_check"] = g.magnitude_check;
    d["magnitude_flagged"] = g.magnitude_flagged;
  }
  if (res.method == Method::fock_oracle) {
    d["oracle_convergence"] = g.oracle_convergence;
    d["oracle_converged"] = g.oracle_converged;
  }
  return d;
}

json result_json(const AmplitudeResult& res, double t, int modes) {
  json out;
  out["alpha"] = json{{"re", res.alpha.real()}, {"im", res.alpha.imag()}};
  out["magnitude"] = res.magnitude;
  out["phase"] = res.phase;
  out["method"] = to_string(res.method);
  out["t"] = t;
  out["modes"] = modes;
  out["diagnostics"] = diagnostics_json(res);
  return out;
}

Eigen::MatrixXd to_job_ordering(const Eigen::MatrixXd& h, const std::string& ordering) {
  return ordering == "xxpp" ? h : convert_ordering(h, "xxpp", ordering);
}

// Resolved per-job settings after merging job keys with flag defaults.
struct JobSettings {
  std::string ordering;
  std::string method = "auto";
  std::optional<double> tol;
  std::optional<int> steps;
  std::optional<int> cutoff;
  bool richardson = false;
};

JobSettings resolve_settings(const json& job, const JobDefaults& defaults) {
  JobSettings s;
  s.ordering = validated_ordering(
      job.contains("ordering") ? as_string(job["ordering"], "job.ordering")
                               : defaults.ordering,
      "job");
  if (job.contains("method")) {
    s.method = as_string(job["method"], "job.method");
  } else if (defaults.method) {
    s.method = *defaults.method;
  }
  if (job.contains("tol")) {
    const double tol = as_number(job["tol"], "job.tol");
    if (!(tol > 0.0)) {
      throw InvalidInput("job.tol must be positive");
    }
    s.tol = tol;
  } else {
    s.tol = defaults.tol;
  }
  if (job.contains("steps")) {
    s.steps = as_int(job["steps"], "job.steps");
  } else {
    s.steps = defaults.steps;
  }
  if (job.contains("cutoff")) {
    s.cutoff = as_int(job["cutoff"], "job.cutoff");
  } else {
    s.cutoff = defaults.cutoff;
  }
  if (job.contains("richardson")) {
    s.richardson = as_bool(job["richardson"], "job.richardson");
  }
  return s;
}

json run_constant_job(const json& job, const JobDefaults& defaults,
                      const JobSettings& s, int modes) {
  if (job.contains("steps") || job.contains("richardson")) {
    throw InvalidInput("job: 'steps'/'richardson' apply to schedule jobs only");
  }
  if (!job.contains("t")) {
    throw InvalidInput("job: constant-H jobs require 't'");
  }
  const double t = as_number(job["t"], "job.t");

  Eigen::MatrixXd hmat = as_matrix(job["H"], "job.H");
  if (hmat.rows() != 2 * modes || hmat.cols() != 2 * modes) {
    throw InvalidInput("job.H must be 2*modes x 2*modes");
  }
  if (s.ordering == "xpxp") {
    hmat = convert_ordering(hmat, "xpxp", "xxpp");
  }
  const QuadHamiltonian h(hmat);

  json out;
  if (s.method == "fock_oracle") {
    if (job.contains("linear")) {
      throw InvalidInput("job: 'linear' is not supported with method=fock_oracle");
    }
    if (modes > 2) {
      throw InvalidInput("job: method=fock_oracle supports at most 2 modes");
    }
    FockConfig cfg;
    cfg.cutoff = s.cutoff.value_or(40);
    cfg.modes = modes;
    const OracleAmplitude oa = vacuum_amplitude_fock(h, t, cfg, s.tol.value_or(1e-6));
    AmplitudeResult res;
    res.alpha = oa.alpha;
    res.magnitude = std::abs(oa.alpha);
    res.phase = std::arg(oa.alpha);
    res.method = Method::fock_oracle;
    res.diagnostics.magnitude_check = std::numeric_limits<double>::quiet_NaN();
    res.diagnostics.oracle_convergence = oa.convergence_estimate;
    res.diagnostics.oracle_converged = oa.converged;
    out = result_json(res, t, modes);
  } else {
    if (s.cutoff) {
      throw InvalidInput("job: 'cutoff' requires method=fock_oracle");
    }
    AmplitudeOptions opts;
    if (s.method != "auto") {
      opts.method = method_from_string(s.method);
    }
    if (s.tol) {
      opts.quadrature.abs_tol = *s.tol;
      opts.quadrature.rel_tol = *s.tol;
    }
    const AmplitudeResult res = vacuum_amplitude(h, t, opts);
    out = result_json(res, t, modes);
    if (job.contains("linear")) {
      const json& lin = job["linear"];
      if (!lin.is_object()) {
        throw InvalidInput("job.linear must be an object");
      }
      check_keys(lin, {"rbar", "hbar"}, "job.linear");
      if (!lin.contains("rbar")) {
        throw InvalidInput("job.linear requires 'rbar'");
      }
      Eigen::VectorXd rbar = as_vector(lin["rbar"], "job.linear.rbar");
      if (rbar.size() != 2 * modes) {
        throw InvalidInput("job.linear.rbar must have length 2*modes");
      }
      if (s.ordering == "xpxp") {
        rbar = convert_ordering(rbar, "xpxp", "xxpp");
      }
      const double hbar =
          lin.contains("hbar") ? as_number(lin["hbar"], "job.linear.hbar") : 2.0;
      const QuadHamiltonian ht(h.matrix() * t);
      const ReducedForm red = reduce_linear(ht, Eigen::VectorXd(rbar * t), hbar);
      out["theta"] = red.theta;
      Eigen::VectorXd delta = red.delta;
      if (s.ordering == "xpxp") {
        delta = convert_ordering(delta, "xxpp", "xpxp");
      }
      out["delta"] = vector_to_json(delta);
      out["quadratic_remainder"] =
          json{{"modes", modes},
               {"H", matrix_to_json(to_job_ordering(red.quadratic.matrix(), s.ordering))},
               {"t", 1.0}};
    }
  }
  if (defaults.emit_symplectic) {
    const SymplecticMatrix sp = heisenberg_symplectic(h, t);
    out["symplectic"] = matrix_to_json(to_job_ordering(sp.matrix(), s.ordering));
  }
  return out;
}

json run_schedule_job(const json& job, const JobDefaults& defaults,
                      const JobSettings& s, int modes) {
  if (job.contains("linear")) {
    throw InvalidInput("job: 'linear' is not supported for schedule jobs");
  }
  if (job.contains("cutoff")) {
    throw InvalidInput("job: 'cutoff' applies to method=fock_oracle only");
  }
  if (job.contains("method") && s.method != "auto") {
    throw InvalidInput("job: schedule jobs do not take a method override");
  }

  const json& sched = job["schedule"];
  if (!sched.is_object()) {
    throw InvalidInput("job.schedule must be an object");
  }
  check_keys(sched, {"times", "matrices"}, "job.schedule");
  if (!sched.contains("times") || !sched.contains("matrices")) {
    throw InvalidInput("job.schedule requires 'times' and 'matrices'");
  }
  if (!sched["times"].is_array() || !sched["matrices"].is_array() ||
      sched["times"].size() != sched["matrices"].size()) {
    throw InvalidInput("job.schedule: 'times' and 'matrices' must be arrays of equal length");
  }
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> values;
  for (size_t k = 0; k < sched["times"].size(); ++k) {
    times.push_back(as_number(sched["times"][k], "job.schedule.times entry"));
    Eigen::MatrixXd hk = as_matrix(sched["matrices"][k], "job.schedule.matrices entry");
    if (hk.rows() != 2 * modes || hk.cols() != 2 * modes) {
      throw InvalidInput("job.schedule.matrices entries must be 2*modes x 2*modes");
    }
    if (s.ordering == "xpxp") {
      hk = convert_ordering(hk, "xpxp", "xxpp");
    }
    values.push_back(std::move(hk));
  }
  const HamiltonianSchedule schedule =
      HamiltonianSchedule::from_table(std::move(times), std::move(values));

  const double t =
      job.contains("t") ? as_number(job["t"], "job.t") : schedule.horizon().value();
  if (t < 0.0) {
    throw InvalidInput("job.t must be nonnegative for schedule jobs");
  }
  TrotterConfig cfg;
  cfg.steps = s.steps.value_or(512);
  cfg.richardson = s.richardson;
  const AmplitudeResult res = amplitude_time_dependent(schedule, t, cfg);
  json out = result_json(res, t, modes);

  if (defaults.emit_symplectic) {
    const int steps = std::max(1, res.diagnostics.subdivisions);
    const double dt = t / steps;
    Eigen::MatrixXd trotter = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
    const Eigen::MatrixXd omega = omega_matrix(modes);
    if (t > 0.0) {
      for (int k = 1; k <= steps; ++k) {
        const QuadHamiltonian h_mid = schedule.at((k - 0.5) * dt);
        trotter = matrix_exponential(Eigen::MatrixXd(omega * h_mid.matrix() * dt)) * trotter;
      }
    }
    out["symplectic"] = matrix_to_json(to_job_ordering(trotter, s.ordering));
  }
  return out;
}

}  // namespace

Eigen::MatrixXd convert_ordering(const Eigen::MatrixXd& h, const std::string& from,
                                 const std::string& to) {
  validated_ordering(from, "convert_ordering");
  validated_ordering(to, "convert_ordering");
  if (h.rows() != h.cols() || h.rows() % 2 != 0 || h.rows() == 0) {
    throw InvalidInput("convert_ordering: matrix must be square with even dimension");
  }
  if (from == to) {
    return h;
  }
  const int m = static_cast<int>(h.rows()) / 2;
  // P maps an xpxp vector to xxpp layout: (P v)_i = v_{2i}, (P v)_{M+i} = v_{2i+1}.
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    p(i, 2 * i) = 1.0;
    p(m + i, 2 * i + 1) = 1.0;
  }
  if (from == "xpxp") {
    return p * h * p.transpose();
  }
  return p.transpose() * h * p;
}

Eigen::VectorXd convert_ordering(const Eigen::VectorXd& v, const std::string& from,
                                 const std::string& to) {
  validated_ordering(from, "convert_ordering");
  validated_ordering(to, "convert_ordering");
  if (v.size() % 2 != 0 || v.size() == 0) {
    throw InvalidInput("convert_ordering: vector must have even length");
  }
  if (from == to) {
    return v;
  }
  const int m = static_cast<int>(v.size()) / 2;
  Eigen::VectorXd out(2 * m);
  if (from == "xpxp") {
    for (int i = 0; i < m; ++i) {
      out(i) = v(2 * i);
      out(m + i) = v(2 * i + 1);
    }
  } else {
    for (int i = 0; i < m; ++i) {
      out(2 * i) = v(i);
      out(2 * i + 1) = v(m + i);
    }
  }
  return out;
}

nlohmann::json run_job(const json& job, const JobDefaults& defaults) {
  if (!job.is_object()) {
    throw InvalidInput("job: expected a JSON object");
  }
  check_keys(job,
             {"modes", "H", "schedule", "t", "ordering", "linear", "method", "tol",
              "steps", "richardson", "cutoff"},
             "job");
  if (!job.contains("modes")) {
    throw InvalidInput("job: 'modes' is required");
  }
  const int modes = as_int(job["modes"], "job.modes");
  if (modes < 1) {
    throw InvalidInput("job.modes must be >= 1");
  }
  const bool has_h = job.contains("H");
  const bool has_schedule = job.contains("schedule");
  if (has_h == has_schedule) {
    throw InvalidInput("job: provide exactly one of 'H' or 'schedule'");
  }
  const JobSettings s = resolve_settings(job, defaults);
  return has_h ? run_constant_job(job, defaults, s, modes)
               : run_schedule_job(job, defaults, s, modes);
}

nlohmann::json run_jobs(const json& input, const JobDefaults& defaults) {
  if (input.is_array()) {
    json out = json::array();
    for (size_t k = 0; k < input.size(); ++k) {
      try {
        out.push_back(run_job(input[k], defaults));
      } catch (const InvalidInput& e) {
        throw InvalidInput("job " + std::to_string(k) + ": " + e.what());
      } catch (const NumericalFailure& e) {
        throw NumericalFailure("job " + std::to_string(k) + ": " + e.what());
      }
    }
    return out;
  }
  return run_job(input, defaults);
}

}  // namespace vacamp
