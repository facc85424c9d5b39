#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vacamp/errors.hpp"
#include "vacamp/job.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNumericalFailure = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) {
    throw vacamp::InvalidInput("cannot open input file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const nlohmann::json& doc) {
  if (path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw vacamp::InvalidInput("cannot open output file: " + path);
  }
  out << doc.dump(2) << "\n";
}

int fail(const std::string& output, const std::string& type, const std::string& message,
         int code) {
  const nlohmann::json doc{{"error", {{"type", type}, {"message", message}}}};
  try {
    write_output(output, doc);
  } catch (const std::exception&) {
    std::cerr << doc.dump(2) << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vacuum-to-vacuum amplitude of quadratic bosonic Hamiltonians"};
  std::string input = "-";
  std::string output = "-";
  std::string method;
  std::string ordering = "xxpp";
  int steps = 0;
  double tol = 0.0;
  int cutoff = 0;
  bool emit_symplectic = false;

  app.add_option("-i,--input", input, "job JSON (file path, or '-' for stdin)");
  app.add_option("-o,--output", output, "result destination ('-' for stdout)");
  app.add_option("--method", method, "evaluation method for constant-H jobs")
      ->check(CLI::IsMember({"auto", "passive", "active", "single_mode", "williamson",
                             "general", "fock_oracle"}));
  app.add_option("--steps", steps, "trotter steps for schedule jobs (default 512)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "quadrature / oracle convergence tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--cutoff", cutoff, "Fock cutoff for method=fock_oracle (default 40)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--emit-symplectic", emit_symplectic,
               "include the symplectic propagator exp(Omega H t) in results");
  app.add_option("--ordering", ordering, "quadrature ordering of input matrices")
      ->check(CLI::IsMember({"xxpp", "xpxp"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidInput;
  }

  vacamp::JobDefaults defaults;
  if (!method.empty() && method != "auto") {
    defaults.method = method;
  }
  if (steps > 0) {
    defaults.steps = steps;
  }
  if (tol > 0.0) {
    defaults.tol = tol;
  }
  if (cutoff > 0) {
    defaults.cutoff = cutoff;
  }
  defaults.emit_symplectic = emit_symplectic;
  defaults.ordering = ordering;

  nlohmann::json jobs;
  try {
    jobs = nlohmann::json::parse(read_input(input));
  } catch (const nlohmann::json::exception& e) {
    return fail(output, "schema", std::string("input is not valid JSON: ") + e.what(),
                kExitInvalidInput);
  } catch (const vacamp::InvalidInput& e) {
    return fail(output, "schema", e.what(), kExitInvalidInput);
  }

  try {
    write_output(output, vacamp::run_jobs(jobs, defaults));
  } catch (const vacamp::InvalidInput& e) {
    return fail(output, "schema", e.what(), kExitInvalidInput);
  } catch (const vacamp::NumericalFailure& e) {
    return fail(output, "numerical", e.what(), kExitNumericalFailure);
  } catch (const std::exception& e) {
    return fail(output, "internal", e.what(), kExitNumericalFailure);
  }
  return kExitOk;
}
