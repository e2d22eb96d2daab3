#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace ktg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad model parameters, violated preconditions, guard limits.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A math-domain failure: the requested quantity does not exist for these inputs.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A deviation scale t outside the region where a bound's denominator is
/// positive. `max_admissible_t` is the supremum of admissible t (exclusive).
class AdmissibilityError : public DomainError {
 public:
  AdmissibilityError(const std::string& what, double max_admissible_t)
      : DomainError(what), max_admissible_t_(max_admissible_t) {}

  double max_admissible_t() const noexcept { return max_admissible_t_; }

 private:
  double max_admissible_t_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace ktg
