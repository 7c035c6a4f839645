#pragma once

#include <stdexcept>
#include <string>

namespace harnack {

/// Argument outside the mathematical domain of an operation (t <= 0, tau out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input where a closed form degenerates and the caller must use another route.
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Time ordering t1 < t2 required but not satisfied.
class OrderingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Missing or invalid caller-provided contract data (growth certificates, configs).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature did not meet its tolerance. Carries the best estimate it reached.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace harnack
