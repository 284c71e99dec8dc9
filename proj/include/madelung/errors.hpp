#pragma once

#include <stdexcept>
#include <string>

namespace madelung {

// Argument outside the mathematical domain of an evaluator.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Gamma evaluated at (or numerically on top of) a non-positive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Series or asymptotic expansion failed to reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point lies inside the exclusion radius of a quantum-potential pole or density zero.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double eta)
      : std::runtime_error(what), eta_(eta) {}
  double eta() const noexcept { return eta_; }

 private:
  double eta_;
};

// The density march reached f < 1e-12.
class ZeroCrossing : public std::runtime_error {
 public:
  ZeroCrossing(const std::string& what, double eta)
      : std::runtime_error(what), eta_(eta) {}
  double eta() const noexcept { return eta_; }

 private:
  double eta_;
};

class StiffnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Halving the finite-difference step changed the residual by more than 10x.
class StepTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeTooNarrow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnmatchedRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ToleranceNotMet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace madelung
