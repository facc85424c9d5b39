#pragma once

#include <complex>
#include <functional>

#include "vacamp/errors.hpp"

namespace vacamp {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 1 << 15;
};

struct QuadratureOutcome {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;  // sum of per-segment Kronrod-Gauss gaps
  int subdivisions = 0;         // number of interval splits performed
  bool converged = true;
};

// Globally adaptive Gauss-Kronrod 15(7) integration of a complex-valued
// integrand over [a, b]. The interval with the largest error estimate is
// bisected until the accumulated estimate drops below
// max(abs_tol, rel_tol * |integral|) or max_subdivisions is reached (in which
// case converged is false and the best available value is returned).
QuadratureOutcome integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                     double a, double b, const QuadratureConfig& cfg = {});

}  // namespace vacamp
