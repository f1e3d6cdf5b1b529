#include "sasaki/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace sasaki {

SpherePoint::SpherePoint(Vector coords) : coords_(std::move(coords)) {
  const auto dim = coords_.size();
  if (dim < 4 || dim % 2 != 0) {
    throw DomainError("sphere point: ambient dimension must be even and >= 4, got " +
                      std::to_string(dim));
  }
  if (std::abs(coords_.norm() - 1.0) > 1e-12) {
    throw DomainError("sphere point: |x| deviates from 1 by more than 1e-12");
  }
}

SpherePoint SpherePoint::normalized(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 1e-300)) throw DomainError("sphere point: cannot normalize a zero vector");
  return SpherePoint(v / norm);
}

Matrix tangent_projector(const Vector& p) {
  return Matrix::Identity(p.size(), p.size()) - p * p.transpose();
}

TangentVector project_tangent(const SpherePoint& p, const Vector& v) {
  const Vector& x = p.coords();
  return TangentVector{p, v - v.dot(x) * x};
}

Matrix tangent_frame(const Vector& p) {
  const auto dim = p.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&p](Eigen::Index a, Eigen::Index b) {
    return std::abs(p(a)) < std::abs(p(b));
  });

  Matrix frame(dim, dim - 1);
  Eigen::Index filled = 0;
  for (const auto i : order) {
    if (filled == dim - 1) break;
    Vector v = -p(i) * p;
    v(i) += 1.0;
    // Two passes of modified Gram-Schmidt keep the frame orthonormal to ~1e-16.
    for (int pass = 0; pass < 2; ++pass) {
      v -= v.dot(p) * p;
      for (Eigen::Index k = 0; k < filled; ++k) v -= v.dot(frame.col(k)) * frame.col(k);
    }
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    frame.col(filled++) = v / norm;
  }
  return frame;
}

Vector Chart::pole(Eigen::Index ambient_dim) const {
  Vector e = Vector::Zero(ambient_dim);
  e(0) = pole_sign;
  return e;
}

Vector Chart::coords(const Vector& p) const {
  const double s = pole_sign;
  if ((p - pole(p.size())).norm() < 1e-6) {
    throw DomainError("chart: point lies within 1e-6 of the chart pole");
  }
  return p.tail(p.size() - 1) / (1.0 - s * p(0));
}

Vector Chart::inverse(const Vector& u) const {
  const double s = pole_sign;
  const double r2 = u.squaredNorm();
  Vector p(u.size() + 1);
  p(0) = s * (r2 - 1.0) / (r2 + 1.0);
  p.tail(u.size()) = 2.0 * u / (r2 + 1.0);
  return p;
}

Matrix Chart::inverse_jacobian(const Vector& u) const {
  const double s = pole_sign;
  const double r2 = u.squaredNorm();
  const double d = r2 + 1.0;
  const auto m = u.size();
  Matrix jac(m + 1, m);
  jac.row(0) = (s * 4.0 / (d * d)) * u.transpose();
  jac.bottomRows(m) = (2.0 / d) * Matrix::Identity(m, m) - (4.0 / (d * d)) * u * u.transpose();
  return jac;
}

Vector chart_coords(const Chart& c, const SpherePoint& p) { return c.coords(p.coords()); }

SpherePoint chart_inverse(const Chart& c, const Vector& u) {
  if (!u.allFinite()) throw DomainError("chart: non-finite chart coordinates");
  return SpherePoint::normalized(c.inverse(u));
}

Chart chart_for(const Vector& p) { return Chart{p(0) > 0.0 ? -1 : 1}; }

SampleSet sample_sphere(int n, int count, std::uint64_t seed) {
  if (count < 1) throw DomainError("sample_sphere: count must be >= 1");
  if (n < 1) throw DomainError("sample_sphere: n must be >= 1");
  const Eigen::Index dim = 2 * n + 2;

  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  SampleSet set;
  set.seed = seed;
  set.count = count;
  set.n = n;
  set.points.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(set.points.size()) < count) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(engine);
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    v /= norm;
    // Keep clear of both default chart poles.
    if ((v - Vector::Unit(dim, 0)).norm() < kPoleExclusion ||
        (v + Vector::Unit(dim, 0)).norm() < kPoleExclusion) {
      continue;
    }
    set.points.emplace_back(std::move(v));
  }
  return set;
}

}  // namespace sasaki
