#pragma once

#include <stdexcept>
#include <string>

namespace rbm {

/// Input vector or matrix has the wrong shape for the operator.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured size cap (dense materialization, eigensolves).
class CapacityError : public std::length_error {
 public:
  CapacityError(const std::string& cap_name, long long limit, long long requested)
      : std::length_error(cap_name + " cap is " + std::to_string(limit) + ", requested " +
                          std::to_string(requested)),
        cap_name_(cap_name),
        limit_(limit) {}

  const std::string& cap_name() const noexcept { return cap_name_; }
  long long limit() const noexcept { return limit_; }

 private:
  std::string cap_name_;
  long long limit_;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankDeficientError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace rbm
