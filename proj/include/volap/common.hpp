#pragma once

#include <stdexcept>
#include <string>

namespace volap {

// Series or quadrature failed to reach the requested tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent field left the admissible range (0, 2].
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad run configuration (CLI / JSON layer).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace volap
