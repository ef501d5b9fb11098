#pragma once

#include <stdexcept>
#include <string>

namespace cbath {

/// Invalid parameters or configuration. Detected before any computation.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical invariant (trace, positivity, Hermiticity, stability) broke
/// during a computation.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cbath
