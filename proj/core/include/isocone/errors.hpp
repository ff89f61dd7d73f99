#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace isocone {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed cone description, point, or configuration.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Matrix fails the linear-independence threshold.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Operation not available for this cone representation.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A solver could not decide (LP degeneracy, iteration cap, ambiguous margin).
class Indeterminate : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling exceeded its rejection budget.
class SamplingFailure : public Error {
 public:
  using Error::Error;
};

/// An iterative projection did not converge; carries the best iterate.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, Eigen::VectorXd best)
      : Error(what), best_(std::move(best)) {}

  const Eigen::VectorXd& bestIterate() const noexcept { return best_; }

 private:
  Eigen::VectorXd best_;
};

}  // namespace isocone
