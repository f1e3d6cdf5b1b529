#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sasaki/common.hpp"
#include "sasaki/exact.hpp"
#include "sasaki/killing.hpp"

namespace sasaki {

/// Rotation rates of a linear Killing field, one per invariant 2-plane.
struct RotationProfile {
  std::vector<ExactReal> rates;

  /// Distinct rates (sorted by value) with their multiplicities.
  std::vector<std::pair<ExactReal, int>> multiplicities() const;
  bool has_zero_rate() const;
};

/// Rates of J0 + a J1 on S^(2n+1): 1 + a on the first plane, 1 on the others.
std::vector<ExactReal> rates_of_j0_plus_aj1(int n, const ExactReal& a);

/// Validates declared rates against the spectrum of A (eigenvalues +-i r):
/// sorted |r| must match within 1e-9. Throws DomainError on mismatch or
/// when the number of rates is not half the dimension.
RotationProfile rotation_profile(const LinearKillingField& a, std::vector<ExactReal> declared);

enum class FlowVerdict { kRegular, kQuasiRegular, kIrregular };
std::string to_string(FlowVerdict v);

/// A period 2 pi * multiple / unit.
struct Period {
  Rational multiple;
  ExactReal unit;

  double value() const;
  std::string to_string() const;
  bool operator==(const Period& o) const { return multiple == o.multiple && unit == o.unit; }
};

struct FlowClassification {
  FlowVerdict verdict = FlowVerdict::kIrregular;
  /// Period of an orbit through a point with nonzero component in every plane.
  std::optional<Period> generic_period;
  /// Periods of the closed orbits on lower strata that differ from the
  /// generic one, in decreasing order.
  std::vector<Period> exceptional_periods;
  int closure_torus_dim = 0;
};

/// Exact classification; negative rates are taken by absolute value.
/// Throws UnsupportedError for a zero rate or more than 20 distinct rates.
FlowClassification classify(const RotationProfile& profile);

struct OrbitProbe {
  double grid_step = 0.0;
  double horizon = 0.0;
  double tolerance = 0.0;
  std::vector<double> return_times;
  std::optional<double> first_return;
  /// Smallest |exp(tA)p - p| over the grid once the orbit has left p.
  double min_distance = 0.0;
};

/// Scans |exp(tA)p - p| for t in (0, horizon] on a grid (exact rotation
/// blocks from a real Schur form), refines local minima by golden-section
/// search and reports those below tol.
OrbitProbe numeric_orbit_probe(const Matrix& a, const Vector& p, double horizon, double tol,
                               double grid_step = 1e-3);

}  // namespace sasaki
