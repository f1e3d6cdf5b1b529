#include "sasaki/exact.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sasaki {

namespace {

constexpr std::array<double, ExactReal::kBasisSize> kGeneratorValues{
    1.0, std::numbers::sqrt2, std::numbers::sqrt3, 2.2360679774997896964, std::numbers::pi};
constexpr std::array<const char*, ExactReal::kBasisSize> kGeneratorNames{"", "sqrt2", "sqrt3",
                                                                         "sqrt5", "pi"};

long long parse_integer(std::string_view s, std::string_view whole) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw DomainError("malformed number '" + std::string(whole) + "'");
  }
  return v;
}

Rational parse_rational(std::string_view s, std::string_view whole) {
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const long long den = parse_integer(s.substr(slash + 1), whole);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(whole) + "'");
    return Rational(parse_integer(s.substr(0, slash), whole), den);
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string_view::npos) {
      throw DomainError("malformed number '" + std::string(whole) + "'");
    }
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::string_view ip = s.substr(0, dot);
    const long long int_part = ip.empty() ? 0 : parse_integer(ip, whole);
    const long long frac_part = parse_integer(frac, whole);
    const bool negative = !ip.empty() && ip.front() == '-';
    return Rational(int_part) + Rational(negative ? -frac_part : frac_part, scale);
  }
  return Rational(parse_integer(s, whole));
}

}  // namespace

ExactReal::ExactReal(Rational q) { c_[kOne] = q; }

ExactReal ExactReal::generator(Basis b) {
  ExactReal r;
  r.c_[b] = 1;
  return r;
}

ExactReal ExactReal::parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (s.starts_with("irr:-")) {
    negative = true;
    s = s.substr(5);
  } else if (s.starts_with("-irr:")) {
    negative = true;
    s = s.substr(5);
  } else if (s.starts_with("irr:")) {
    s = s.substr(4);
  } else {
    return ExactReal(parse_rational(s, text));
  }
  ExactReal r;
  if (s == "sqrt2") r = generator(kSqrt2);
  else if (s == "sqrt3") r = generator(kSqrt3);
  else if (s == "sqrt5") r = generator(kSqrt5);
  else if (s == "pi") r = generator(kPi);
  else if (s == "sqrt2m1") r = generator(kSqrt2) - ExactReal(1);
  else if (s == "sqrt3m1") r = generator(kSqrt3) - ExactReal(1);
  else if (s == "sqrt5m1") r = generator(kSqrt5) - ExactReal(1);
  else if (s == "golden") r = (ExactReal(1) + generator(kSqrt5)) * Rational(1, 2);
  else throw DomainError("unknown irrational tag '" + std::string(text) + "'");
  return negative ? -r : r;
}

bool ExactReal::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q.numerator() == 0; });
}

bool ExactReal::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.numerator() == 0; });
}

Rational ExactReal::rational() const {
  if (!is_rational()) throw DomainError("value " + to_string() + " is not rational");
  return c_[kOne];
}

double ExactReal::value() const {
  double v = 0.0;
  for (int b = 0; b < kBasisSize; ++b) v += boost::rational_cast<double>(c_[b]) * kGeneratorValues[b];
  return v;
}

int ExactReal::sign() const {
  if (is_zero()) return 0;
  return value() > 0.0 ? 1 : -1;
}

std::string ExactReal::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int b = 0; b < kBasisSize; ++b) {
    Rational q = c_[b];
    if (q.numerator() == 0) continue;
    if (!first) os << (q.numerator() < 0 ? " - " : " + ");
    else if (q.numerator() < 0) os << "-";
    if (q.numerator() < 0) q = -q;
    first = false;
    if (b == kOne) {
      os << q.numerator();
      if (q.denominator() != 1) os << "/" << q.denominator();
      continue;
    }
    if (q != Rational(1)) {
      os << q.numerator();
      if (q.denominator() != 1) os << "/" << q.denominator();
      os << "*";
    }
    os << kGeneratorNames[b];
  }
  return os.str();
}

ExactReal ExactReal::operator-() const {
  ExactReal r;
  for (int b = 0; b < kBasisSize; ++b) r.c_[b] = -c_[b];
  return r;
}

ExactReal ExactReal::operator+(const ExactReal& o) const {
  ExactReal r;
  for (int b = 0; b < kBasisSize; ++b) r.c_[b] = c_[b] + o.c_[b];
  return r;
}

ExactReal ExactReal::operator-(const ExactReal& o) const { return *this + (-o); }

ExactReal ExactReal::operator*(const Rational& q) const {
  ExactReal r;
  for (int b = 0; b < kBasisSize; ++b) r.c_[b] = c_[b] * q;
  return r;
}

ExactReal ExactReal::operator*(const ExactReal& o) const {
  if (o.is_rational()) return *this * o.c_[kOne];
  if (is_rational()) return o * c_[kOne];
  throw UnsupportedError("product of two irrational values leaves the exact basis");
}

ExactReal ExactReal::operator/(const ExactReal& o) const {
  if (!o.is_rational() || o.is_zero()) {
    throw UnsupportedError("division is supported by nonzero rationals only");
  }
  return *this * (Rational(1) / o.c_[kOne]);
}

bool ExactReal::rational_ratio(const ExactReal& other, Rational& q) const {
  int pivot = -1;
  for (int b = 0; b < kBasisSize; ++b) {
    if (other.c_[b].numerator() != 0) {
      pivot = b;
      break;
    }
  }
  if (pivot < 0) return false;
  const Rational candidate = c_[pivot] / other.c_[pivot];
  if (*this != other * candidate) return false;
  q = candidate;
  return true;
}

int rational_rank(const std::vector<ExactReal>& values) {
  std::vector<std::array<Rational, ExactReal::kBasisSize>> rows;
  rows.reserve(values.size());
  for (const auto& v : values) rows.push_back(v.coefficients());
  int rank = 0;
  for (int col = 0; col < ExactReal::kBasisSize && rank < static_cast<int>(rows.size()); ++col) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                              [col](const auto& r) { return r[static_cast<std::size_t>(col)].numerator() != 0; });
    if (pivot == rows.end()) continue;
    std::swap(*pivot, rows[static_cast<std::size_t>(rank)]);
    const auto& prow = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      const Rational f = rows[r][static_cast<std::size_t>(col)] / prow[static_cast<std::size_t>(col)];
      if (f.numerator() == 0) continue;
      for (int b = 0; b < ExactReal::kBasisSize; ++b) {
        rows[r][static_cast<std::size_t>(b)] -= f * prow[static_cast<std::size_t>(b)];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace sasaki
