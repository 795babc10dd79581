#pragma once

#include <stdexcept>
#include <string>

namespace zicount {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An objective or gradient evaluated to NaN/Inf and step control could not recover.
class NonFiniteObjective : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Information matrix not positive definite: the fit is unidentified or unconverged.
class SingularInformation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested marginal zero rate lies outside what the generator family can produce.
class UnreachableZeroRate : public std::runtime_error {
 public:
  UnreachableZeroRate(const std::string& msg, double low, double high)
      : std::runtime_error(msg), achievable_low(low), achievable_high(high) {}
  double achievable_low;
  double achievable_high;
};

/// Malformed user input (CSV data, config files, results tables).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zicount
