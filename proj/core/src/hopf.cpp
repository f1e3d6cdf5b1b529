#include <algorithm>
#include <cmath>
#include <numbers>

#include "sasaki/constructions.hpp"

namespace sasaki {

HopfBundleData::HopfBundleData()
    : xi(complex_structure(4)), orbit_length(2.0 * std::numbers::pi) {}

Vector HopfBundleData::project(const Vector& p) {
  Vector y(3);
  y << p(0) * p(0) + p(1) * p(1) - p(2) * p(2) - p(3) * p(3), 2.0 * (p(0) * p(2) + p(1) * p(3)),
      2.0 * (p(1) * p(2) - p(0) * p(3));
  return y;
}

Matrix HopfBundleData::projection_jacobian(const Vector& p) {
  Matrix j(3, 4);
  j << 2 * p(0), 2 * p(1), -2 * p(2), -2 * p(3),
       2 * p(2), 2 * p(3), 2 * p(0), 2 * p(1),
       -2 * p(3), 2 * p(2), 2 * p(1), -2 * p(0);
  return j;
}

Vector HopfBundleData::lift_point(const Vector& y) {
  Vector p(4);
  if (y(0) >= 0.0) {
    const double z1 = std::sqrt(0.5 * (1.0 + y(0)));
    p << z1, 0.0, y(1) / (2.0 * z1), -y(2) / (2.0 * z1);
  } else {
    const double z2 = std::sqrt(0.5 * (1.0 - y(0)));
    p << y(1) / (2.0 * z2), y(2) / (2.0 * z2), z2, 0.0;
  }
  return p / p.norm();
}

Vector HopfBundleData::horizontal_lift(const Vector& p, const Vector& w) const {
  Vector h = projection_jacobian(p).transpose() * w / 4.0;
  const Vector xv = xi(p);
  h -= h.dot(p) * p;
  h -= h.dot(xv) * xv;
  return h;
}

double HopfBundleData::curvature(const Vector& y, const Vector& u, const Vector& w) const {
  // dxi = -2 P J0 P on the round sphere.
  const Vector p = lift_point(y);
  return -2.0 * horizontal_lift(p, u).dot(xi.matrix() * horizontal_lift(p, w));
}

double HopfLift::minus_x_into_f(const Vector& y, const Vector& w) const {
  return -bundle->curvature(y, base_rotation * y, w);
}

namespace {

/// Composite Simpson rule of t -> integrand(gamma(t), gamma'(t)) along the
/// great circle from a to b.
template <class F>
double great_circle_integral(const Vector& a, const Vector& b, int intervals, F&& integrand) {
  const double cosang = std::clamp(a.dot(b), -1.0, 1.0);
  Vector e = b - cosang * a;
  const double en = e.norm();
  if (en < 1e-15) {
    if (cosang > 0.0) return 0.0;
    throw DomainError("great circle between antipodal points is not unique");
  }
  e /= en;
  const double theta = std::atan2(en, cosang);
  const double h = 1.0 / intervals;
  double sum = 0.0;
  for (int k = 0; k <= intervals; ++k) {
    const double t = k * h;
    const double c = std::cos(t * theta);
    const double s = std::sin(t * theta);
    const Vector pos = c * a + s * e;
    const Vector vel = theta * (-s * a + c * e);
    const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += weight * integrand(pos, vel);
  }
  return sum * h / 3.0;
}

}  // namespace

double HopfLift::potential_via(const Vector& y, const Vector& waypoint) const {
  const auto integrand = [this](const Vector& pos, const Vector& vel) { return minus_x_into_f(pos, vel); };
  return f0 + great_circle_integral(anchor, waypoint, intervals, integrand) +
         great_circle_integral(waypoint, y, intervals, integrand);
}

double HopfLift::potential(const Vector& y) const {
  if (y.dot(anchor) < -0.5) {
    // Detour through a point orthogonal to the anchor.
    Vector w = Vector::Zero(3);
    w(anchor.cwiseAbs().minCoeff() == std::abs(anchor(0)) ? 0 : 1) = 1.0;
    w -= w.dot(anchor) * anchor;
    return potential_via(y, w / w.norm());
  }
  const auto integrand = [this](const Vector& pos, const Vector& vel) { return minus_x_into_f(pos, vel); };
  return f0 + great_circle_integral(anchor, y, intervals, integrand);
}

VectorField HopfLift::field() const {
  const HopfLift self = *this;
  return VectorField::custom(
      [self](const Vector& p) -> Vector {
        const Vector y = HopfBundleData::project(p);
        return self.bundle->horizontal_lift(p, self.base_rotation * y) +
               self.potential(y) * self.bundle->xi(p);
      },
      "X* + f xi");
}

HopfLift solve_lift(const HopfBundleData& hopf, const Matrix& base_rotation, double f0) {
  if (base_rotation.rows() != 3 || base_rotation.cols() != 3 ||
      (base_rotation + base_rotation.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("Hopf lift: base field must be a rotation generator in so(3)");
  }
  HopfLift out;
  out.base_rotation = base_rotation;
  out.f0 = f0;
  out.anchor = Vector::Zero(3);
  out.anchor << 0.36, 0.48, 0.8;  // unit, generic
  out.bundle = std::make_shared<const HopfBundleData>(hopf);
  return out;
}

Matrix base_projection(const HopfBundleData& hopf, const Matrix& a) {
  const Matrix& j = hopf.xi.matrix();
  if (a.rows() != 4 || a.cols() != 4 || (a * j - j * a).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("base projection: field does not commute with xi");
  }
  Matrix r(3, 3);
  for (int i = 0; i < 3; ++i) {
    const Vector y = Vector::Unit(3, i);
    const Vector p = HopfBundleData::lift_point(y);
    r.col(i) = HopfBundleData::projection_jacobian(p) * (a * p);
  }
  return r;
}

}  // namespace sasaki
