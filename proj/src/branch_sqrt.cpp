#include "vacamp/branch_sqrt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace vacamp {

namespace {

using Complex = std::complex<double>;

struct Sample {
  double t;
  Complex z;
};

}  // namespace

Complex tracked_sqrt(const std::function<Complex(double)>& z_of_t, double t,
                     double rate_hint) {
  if (!std::isfinite(t) || !std::isfinite(rate_hint) || rate_hint < 0.0) {
    throw InvalidInput("tracked_sqrt: t and rate_hint must be finite, rate_hint >= 0");
  }
  const Complex z0 = z_of_t(0.0);
  if (std::abs(z0 - Complex(1.0, 0.0)) > 1e-8) {
    throw NumericalFailure("tracked_sqrt: path is not anchored at z(0) = 1");
  }
  if (t == 0.0) {
    return std::sqrt(z0);
  }

  // Initial grid sized so each step rotates by at most ~pi/4 according to the
  // caller's rate bound, capped to keep adversarial hints from hanging us.
  const double quarter_turns = std::abs(t) * rate_hint / (std::numbers::pi / 4.0);
  const int initial = std::clamp(static_cast<int>(std::ceil(quarter_turns)) + 1, 4, 1 << 16);

  // Work through the path left to right with a stack of pending samples;
  // segments whose rotation cannot be certified < pi/2 are bisected.
  const double min_step = std::abs(t) * 1e-12;
  double theta = std::arg(z0);  // accumulated arg of z along the path
  Sample current{0.0, z0};
  std::vector<Sample> pending;
  for (int k = initial; k >= 1; --k) {
    const double tk = t * (static_cast<double>(k) / initial);
    pending.push_back({tk, z_of_t(tk)});
  }
  while (!pending.empty()) {
    const Sample next = pending.back();
    if (std::abs(next.z) == 0.0 || !std::isfinite(std::abs(next.z))) {
      throw NumericalFailure("tracked_sqrt: path value vanished or diverged at t = " +
                             std::to_string(next.t));
    }
    const double rotation = std::arg(next.z / current.z);
    if (std::abs(rotation) < 1.35) {  // comfortably below pi/2
      theta += rotation;
      current = next;
      pending.pop_back();
      continue;
    }
    const double mid = 0.5 * (current.t + next.t);
    if (std::abs(next.t - current.t) < min_step) {
      throw NumericalFailure("tracked_sqrt: branch refinement bottomed out near t = " +
                             std::to_string(mid));
    }
    pending.push_back({mid, z_of_t(mid)});
  }
  return std::polar(std::sqrt(std::abs(current.z)), 0.5 * theta);
}

}  // namespace vacamp
