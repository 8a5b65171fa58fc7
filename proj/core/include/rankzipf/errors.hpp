#pragma once

#include <stdexcept>
#include <string>

namespace rankzipf {

// Input rejected by a validating constructor (alphabet, distribution, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonPositiveProbability : public ValidationError {
 public:
  NonPositiveProbability(std::size_t index, double value);
  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t index_;
  double value_;
};

class SumNotOne : public ValidationError {
 public:
  explicit SumNotOne(double deviation);
  // Signed deviation 1 - sum(p).
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class TooFewLetters : public ValidationError {
 public:
  explicit TooFewLetters(std::size_t n);
};

class InvalidDistribution : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LengthMismatch : public ValidationError {
 public:
  LengthMismatch(std::size_t lhs, std::size_t rhs);
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotLattice : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation hit its work budget; partial() carries the estimate so far
// (NaN when no meaningful partial value exists).
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double partial);
  double partial() const noexcept { return partial_; }

 private:
  double partial_;
};

}  // namespace rankzipf
