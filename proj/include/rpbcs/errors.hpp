#pragma once

#include <stdexcept>
#include <string>

namespace rpbcs {

/// Invalid user input: bad geometry parameters, unknown labels, malformed config.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A requested object exceeds a configured dimension cap.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Geometry that cannot be realized on the given lattice (e.g. a window
/// larger than the box).
struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A computation whose result does not exist (divergent integral,
/// vanishing denominator).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rpbcs
