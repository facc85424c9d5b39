#pragma once

#include <stdexcept>

namespace vacamp {

// Malformed caller input: wrong shapes, asymmetric matrices where symmetry is
// required, out-of-range parameters, unparseable job descriptions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that is well-posed in exact arithmetic broke down numerically:
// singular propagator block, quadrature that refuses to converge,
// determinant underflow.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vacamp
