#include "sasaki/flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace sasaki {

std::vector<std::pair<ExactReal, int>> RotationProfile::multiplicities() const {
  std::vector<std::pair<ExactReal, int>> out;
  for (const auto& r : rates) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == r; });
    if (it == out.end()) out.emplace_back(r, 1);
    else ++it->second;
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first.value() < y.first.value(); });
  return out;
}

bool RotationProfile::has_zero_rate() const {
  return std::any_of(rates.begin(), rates.end(), [](const ExactReal& r) { return r.is_zero(); });
}

std::vector<ExactReal> rates_of_j0_plus_aj1(int n, const ExactReal& a) {
  std::vector<ExactReal> out(static_cast<std::size_t>(n + 1), ExactReal(1));
  out.front() = ExactReal(1) + a;
  return out;
}

RotationProfile rotation_profile(const LinearKillingField& a, std::vector<ExactReal> declared) {
  const Eigen::Index dim = a.ambient_dim();
  if (dim % 2 != 0 || static_cast<Eigen::Index>(declared.size()) * 2 != dim) {
    throw DomainError("rotation profile: need one rate per invariant plane");
  }
  const Eigen::EigenSolver<Matrix> eig(a.matrix(), false);
  std::vector<double> numeric;
  for (Eigen::Index i = 0; i < dim; ++i) numeric.push_back(std::abs(eig.eigenvalues()(i).imag()));
  std::sort(numeric.begin(), numeric.end());
  std::vector<double> expected;
  for (const auto& r : declared) {
    expected.push_back(std::abs(r.value()));
    expected.push_back(std::abs(r.value()));
  }
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    if (std::abs(numeric[i] - expected[i]) > 1e-9) {
      throw DomainError("rotation profile: declared rates do not match the spectrum (" +
                        std::to_string(expected[i]) + " vs " + std::to_string(numeric[i]) + ")");
    }
  }
  return RotationProfile{std::move(declared)};
}

std::string to_string(FlowVerdict v) {
  switch (v) {
    case FlowVerdict::kRegular: return "regular";
    case FlowVerdict::kQuasiRegular: return "quasi-regular";
    case FlowVerdict::kIrregular: return "irregular";
  }
  return "unknown";
}

double Period::value() const {
  return 2.0 * std::numbers::pi * boost::rational_cast<double>(multiple) / unit.value();
}

std::string Period::to_string() const {
  const Rational coef = multiple * Rational(2);
  std::string s;
  if (coef.numerator() != 1) s += std::to_string(coef.numerator());
  s += "pi";
  if (coef.denominator() != 1) s += "/" + std::to_string(coef.denominator());
  if (unit != ExactReal(1)) {
    const std::string u = unit.to_string();
    const bool compound = u.find(' ') != std::string::npos || u.find('*') != std::string::npos;
    s += compound ? "/(" + u + ")" : "/" + u;
  }
  return s;
}

namespace {

/// For rationally dependent positive values v_k = u p_k (p_k coprime
/// positive integers), returns u with unit multiple scaled into `period`:
/// the orbit period is 2 pi / u.
Period stratum_period(const std::vector<ExactReal>& values) {
  const ExactReal& base = values.front();
  std::vector<Rational> ratios;
  for (const auto& v : values) {
    Rational q;
    if (!v.rational_ratio(base, q)) throw UnsupportedError("stratum is not rank one");
    ratios.push_back(q);
  }
  // v_k = base * ratios_k; write ratios_k = p_k / L with L the lcm of denominators.
  long long lcm = 1;
  for (const auto& q : ratios) lcm = std::lcm(lcm, q.denominator());
  long long g = 0;
  for (const auto& q : ratios) g = std::gcd(g, (q * lcm).numerator());
  // u = base * g / lcm; period = 2 pi / u = 2 pi * (lcm / g) / base.
  // Canonical form: the unit's leading coefficient is 1.
  Rational lead(1);
  for (const auto& c : base.coefficients()) {
    if (c.numerator() != 0) {
      lead = c;
      break;
    }
  }
  if ((base * (Rational(1) / lead)).sign() < 0) lead = -lead;
  return Period{Rational(lcm, g) / lead, base * (Rational(1) / lead)};
}

}  // namespace

FlowClassification classify(const RotationProfile& profile) {
  if (profile.rates.empty()) throw DomainError("classify: empty profile");
  if (profile.has_zero_rate()) {
    throw UnsupportedError("classify: zero rate, the field vanishes on the sphere");
  }
  std::vector<ExactReal> distinct;
  for (const auto& r : profile.rates) {
    const ExactReal v = r.sign() < 0 ? -r : r;
    if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) distinct.push_back(v);
  }
  if (distinct.size() > 20) throw UnsupportedError("classify: more than 20 distinct rates");

  FlowClassification out;
  out.closure_torus_dim = rational_rank(distinct);

  std::vector<Period> periods;
  const std::size_t subsets = std::size_t{1} << distinct.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    std::vector<ExactReal> values;
    for (std::size_t k = 0; k < distinct.size(); ++k) {
      if (mask & (std::size_t{1} << k)) values.push_back(distinct[k]);
    }
    if (rational_rank(values) != 1) continue;
    const Period p = stratum_period(values);
    if (mask == subsets - 1) {
      out.generic_period = p;
    } else if (std::find(periods.begin(), periods.end(), p) == periods.end()) {
      periods.push_back(p);
    }
  }
  if (out.generic_period) {
    std::erase(periods, *out.generic_period);
  }
  std::sort(periods.begin(), periods.end(),
            [](const Period& x, const Period& y) { return x.value() > y.value(); });
  out.exceptional_periods = std::move(periods);

  if (out.closure_torus_dim >= 2) {
    out.verdict = FlowVerdict::kIrregular;
  } else if (out.exceptional_periods.empty()) {
    out.verdict = FlowVerdict::kRegular;
  } else {
    out.verdict = FlowVerdict::kQuasiRegular;
  }
  return out;
}

OrbitProbe numeric_orbit_probe(const Matrix& a, const Vector& p, double horizon, double tol,
                               double grid_step) {
  if (std::abs(p.norm() - 1.0) > 1e-12) throw DomainError("orbit probe: point is not on the sphere");
  if (!(grid_step > 0.0) || !(horizon > 0.0)) throw DomainError("orbit probe: bad grid");
  OrbitProbe out;
  out.grid_step = grid_step;
  out.horizon = horizon;
  out.tolerance = tol;

  const Eigen::RealSchur<Matrix> schur(a);
  const Matrix& t = schur.matrixT();
  const Vector q = schur.matrixU().transpose() * p;
  const Eigen::Index dim = q.size();
  // Rotation blocks: (start index, angular rate); 1x1 blocks are fixed.
  std::vector<std::pair<Eigen::Index, double>> blocks;
  for (Eigen::Index i = 0; i < dim;) {
    if (i + 1 < dim && std::abs(t(i + 1, i)) > 0.0) {
      blocks.emplace_back(i, t(i + 1, i));
      i += 2;
    } else {
      ++i;
    }
  }
  const auto distance = [&](double time) {
    double sq = 0.0;
    for (const auto& [i, w] : blocks) {
      const double c = std::cos(w * time) - 1.0;
      const double s = std::sin(w * time);
      const double x = q(i), y = q(i + 1);
      const double dx = c * x + s * y;
      const double dy = -s * x + c * y;
      sq += dx * dx + dy * dy;
    }
    return std::sqrt(sq);
  };

  const auto steps = static_cast<long long>(std::ceil(horizon / grid_step));
  double prev2 = distance(0.0);
  double prev = distance(grid_step);
  bool departed = false;
  out.min_distance = std::numeric_limits<double>::infinity();
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (long long k = 2; k <= steps; ++k) {
    const double time = static_cast<double>(k) * grid_step;
    const double cur = distance(time);
    if (!departed && prev > 10.0 * tol && prev > prev2) departed = true;
    if (departed) {
      out.min_distance = std::min(out.min_distance, prev);
      if (prev <= prev2 && prev <= cur) {
        double lo = time - 2.0 * grid_step;
        double hi = time;
        double x1 = hi - gr * (hi - lo);
        double x2 = lo + gr * (hi - lo);
        double f1 = distance(x1);
        double f2 = distance(x2);
        for (int it = 0; it < 80 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
          if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = distance(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = distance(x2);
          }
        }
        const double tmin = 0.5 * (lo + hi);
        const double dmin = distance(tmin);
        out.min_distance = std::min(out.min_distance, dmin);
        if (dmin < tol) out.return_times.push_back(tmin);
      }
    }
    prev2 = prev;
    prev = cur;
  }
  if (!out.return_times.empty()) out.first_return = out.return_times.front();
  if (!departed) out.min_distance = 0.0;
  return out;
}

}  // namespace sasaki
