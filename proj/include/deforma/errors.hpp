#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace deforma {

/// Argument outside the mathematical domain of an operation (poles, x = 0 in a
/// deformed derivative, q = 1, parity mismatch, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or iteration did not reach its truncation criterion.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument inside the domain but beyond what the chosen method supports
/// (Bessel series guard, factorial overflow guard, grid size limits).
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Malformed function text; `position` is the 0-based offset of the offending
/// character.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Non-fatal diagnostics (quadrature resolution, decay at the cutoff).
using Warnings = std::vector<std::string>;

}  // namespace deforma
