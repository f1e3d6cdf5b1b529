#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sasaki {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (point at a chart
/// pole, field outside an algebra, zero sample count, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Finite differences failed the Richardson step-halving check.
class NumericalQualityError : public Error {
 public:
  using Error::Error;
};

/// A Gram matrix is singular or not positive definite.
class MetricDegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue clusters of ad_xi are not separated well enough to decompose.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// An algebraic structure the caller asserted is not present
/// (e.g. phi1 phi2 phi3 with an eigenvalue far from +-1).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but the requested analysis is undefined for it.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace sasaki
