#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "sasaki/common.hpp"

namespace sasaki {

using Rational = boost::rational<long long>;

/// An exact real number r = c0 + c1 sqrt2 + c2 sqrt3 + c3 sqrt5 + c4 pi with
/// rational coefficients. The generators are linearly independent over Q,
/// so equality and rational dependence are decided on coefficients.
class ExactReal {
 public:
  enum Basis { kOne = 0, kSqrt2, kSqrt3, kSqrt5, kPi, kBasisSize };

  ExactReal() = default;
  ExactReal(Rational q);  // NOLINT(google-explicit-constructor)
  static ExactReal generator(Basis b);

  /// Accepts integers ("3"), fractions ("3/2"), terminating decimals ("0.25")
  /// and tags "irr:sqrt2", "irr:sqrt3", "irr:sqrt5", "irr:pi",
  /// "irr:sqrt2m1" (sqrt2 - 1), "irr:sqrt3m1", "irr:sqrt5m1", "irr:golden"
  /// ((1 + sqrt5) / 2), each optionally prefixed with '-'.
  /// Throws DomainError on anything else.
  static ExactReal parse(std::string_view text);

  const std::array<Rational, kBasisSize>& coefficients() const { return c_; }
  bool is_rational() const;
  bool is_zero() const;
  /// Throws DomainError unless rational.
  Rational rational() const;
  double value() const;
  /// -1, 0 or +1.
  int sign() const;
  std::string to_string() const;

  ExactReal operator-() const;
  ExactReal operator+(const ExactReal& o) const;
  ExactReal operator-(const ExactReal& o) const;
  ExactReal operator*(const Rational& q) const;
  /// Product; throws UnsupportedError unless one factor is rational.
  ExactReal operator*(const ExactReal& o) const;
  /// Throws UnsupportedError unless the divisor is a nonzero rational.
  ExactReal operator/(const ExactReal& o) const;
  bool operator==(const ExactReal& o) const { return c_ == o.c_; }
  bool operator!=(const ExactReal& o) const { return !(*this == o); }

  /// The q with *this = q * other, if it exists and other != 0.
  bool rational_ratio(const ExactReal& other, Rational& q) const;

 private:
  std::array<Rational, kBasisSize> c_{};
};

/// Dimension of the Q-span of the values.
int rational_rank(const std::vector<ExactReal>& values);

}  // namespace sasaki
