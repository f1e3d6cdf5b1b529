#pragma once

#include <cstdint>
#include <vector>

#include "sasaki/common.hpp"

namespace sasaki {

/// A unit vector of R^(2n+2), i.e. a point of S^(2n+1).
class SpherePoint {
 public:
  /// Throws DomainError unless |coords| = 1 within 1e-12 and the ambient
  /// dimension is even and at least 4.
  explicit SpherePoint(Vector coords);

  /// Normalizes `v` first; throws DomainError for a (near) zero vector.
  static SpherePoint normalized(const Vector& v);

  const Vector& coords() const { return coords_; }
  Eigen::Index ambient_dim() const { return coords_.size(); }
  /// The n of S^(2n+1).
  int n() const { return static_cast<int>(coords_.size() / 2 - 1); }

 private:
  Vector coords_;
};

/// A vector tangent to the sphere at `base`.
struct TangentVector {
  SpherePoint base;
  Vector vec;
};

/// Orthogonal projector I - p p^T onto T_p S.
Matrix tangent_projector(const Vector& p);

/// v - <v,p> p attached at p.
TangentVector project_tangent(const SpherePoint& p, const Vector& v);

/// Orthonormal basis of T_p S as the columns of an N x (N-1) matrix.
/// Gram-Schmidt over the projected ambient basis vectors e_i, taken in
/// increasing order of |p_i| (ties by index).
Matrix tangent_frame(const Vector& p);

/// Stereographic chart from the pole s*e_1, s = +-1.
struct Chart {
  int pole_sign = 1;

  Vector pole(Eigen::Index ambient_dim) const;

  /// Chart coordinates in R^(N-1); throws DomainError within 1e-6 of the pole.
  Vector coords(const Vector& p) const;
  /// Inverse chart; the result lies on the sphere.
  Vector inverse(const Vector& u) const;
  /// d(inverse)/du as an N x (N-1) matrix; columns are tangent at inverse(u).
  Matrix inverse_jacobian(const Vector& u) const;
};

Vector chart_coords(const Chart& c, const SpherePoint& p);
SpherePoint chart_inverse(const Chart& c, const Vector& u);

/// Default atlas choice: the chart whose pole (+-e_1) is farther from p.
Chart chart_for(const Vector& p);

struct SampleSet {
  std::vector<SpherePoint> points;
  std::uint64_t seed = 0;
  int count = 0;
  int n = 0;
};

inline constexpr int kDefaultSampleCount = 200;
inline constexpr std::uint64_t kDefaultSeed = 42;
/// Samples closer than this to a chart pole (+-e_1) are redrawn.
inline constexpr double kPoleExclusion = 1e-3;

/// Seeded uniform points on S^(2n+1) (normalized Gaussians from a
/// mt19937_64 stream). Identical arguments give bitwise-identical sets.
SampleSet sample_sphere(int n, int count, std::uint64_t seed);

}  // namespace sasaki
