#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lfd {

// Argument outside the documented domain of an operation (poles, strip
// limits, unsupported weights, malformed ranges).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated a precondition that is not a pure domain restriction,
// e.g. a coefficient table that is too short or an unsorted zero list.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact integer capacity exhausted while building coefficients.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(const std::string& what, std::int64_t first_index)
      : std::overflow_error(what), first_index_(first_index) {}
  std::int64_t first_index() const noexcept { return first_index_; }

 private:
  std::int64_t first_index_;
};

// An iterative method did not reach its target. Carries the best value and
// the error bound that was attained.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what,
                        std::complex<double> best = {0.0, 0.0},
                        double bound = -1.0)
      : std::runtime_error(what), best_(best), bound_(bound) {}
  std::complex<double> best_value() const noexcept { return best_; }
  double best_bound() const noexcept { return bound_; }

 private:
  std::complex<double> best_;
  double bound_;
};

}  // namespace lfd
