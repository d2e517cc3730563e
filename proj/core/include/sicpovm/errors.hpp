#pragma once

#include <stdexcept>
#include <string>

namespace sicpovm {

/// Argument outside the mathematical domain of an operation (d < 2, wrong dimension, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operator label out of range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Wrong number or shape of matrices. Distinct from a numerical tolerance failure.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed serialized input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A loaded basis that parsed but failed numerical validation.
class RejectedBasisError : public std::runtime_error {
 public:
  RejectedBasisError(const std::string& what, double unitarity_deviation,
                     double orthogonality_deviation);

  double unitarity_deviation() const noexcept { return unitarity_deviation_; }
  double orthogonality_deviation() const noexcept { return orthogonality_deviation_; }

 private:
  double unitarity_deviation_;
  double orthogonality_deviation_;
};

}  // namespace sicpovm
