#pragma once

#include <complex>
#include <functional>

#include "vacamp/errors.hpp"

namespace vacamp {

// Square root of z(t) on the branch reached by continuous continuation along
// the path t' : 0 -> t, anchored at z(0) = 1 where the root is +1. The path
// is sampled on a grid that is refined until consecutive samples satisfy
// |arg(z_{k+1}/z_k)| < pi/2, which makes the accumulated argument (and hence
// the half-argument of the root) unambiguous.
//
// rate_hint is an a-priori bound on |d arg z / dt| used to size the initial
// grid; it guards against aliasing of fast phase rotation that pointwise
// refinement cannot detect. Throws NumericalFailure if z vanishes on the path
// or refinement bottoms out at the resolution of double.
std::complex<double> tracked_sqrt(const std::function<std::complex<double>(double)>& z_of_t,
                                  double t, double rate_hint);

}  // namespace vacamp
