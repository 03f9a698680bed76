#pragma once

#include <stdexcept>
#include <string>

namespace fhl {

// Request exceeds the materialization or inversion guards.
struct SizeLimitError : std::runtime_error {
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Gram matrix is not invertible for the requested dimension parameter.
struct SingularGramError : std::runtime_error {
  explicit SingularGramError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter combination is documented as unsupported (not merely out of range).
struct UnsupportedParameterError : std::runtime_error {
  explicit UnsupportedParameterError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fhl
