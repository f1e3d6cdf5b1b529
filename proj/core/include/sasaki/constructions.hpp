#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sasaki/common.hpp"
#include "sasaki/exact.hpp"
#include "sasaki/killing.hpp"
#include "sasaki/metric.hpp"

namespace sasaki {

// Fixed matrices. Coordinates of R^(2n+2) pair up as complex coordinates
// z_k = x_(2k) + i x_(2k+1).

/// Multiplication by i on C^(n+1), as a (2n+2) x (2n+2) skew matrix.
Matrix complex_structure(int ambient_dim);
/// Multiplication by i on the first complex coordinate only.
Matrix first_coordinate_rotation(int ambient_dim);
/// Right multiplication by i, j, k on H^(m+1) = R^(4m+4), quaternion
/// coordinates (a, b, c, d) = a + bi + cj + dk. Satisfies
/// [I_i x, I_j x] = 2 I_k x for cyclic (i, j, k).
std::array<Matrix, 3> quaternionic_structures(int m);

/// E_ab - E_ba for a < b.
Matrix plane_generator(int ambient_dim, int a, int b);

/// so(V1) on the first `block` coordinates, as linear Killing fields.
std::vector<LinearKillingField> rotations_of_first(int ambient_dim, int block);
/// u(n) acting on the complex coordinates 1..n (all but the first).
std::vector<LinearKillingField> unitary_tail(int ambient_dim);

// Round sphere.

struct SasakianExample {
  MetricField metric;
  VectorField xi;
};

/// Round S^(2n+1) with xi(x) = J0 x. Throws DomainError for n < 1.
SasakianExample build_round_sasakian(int n);

struct QuaternionicExample {
  MetricField metric;
  std::array<VectorField, 3> xi;
  std::array<Matrix, 3> matrices;
};

/// Round S^(4m+3) with xi_i(x) = I_i x. Throws DomainError for m < 0.
QuaternionicExample build_quaternionic_frame(int m);

// Deformation g_F.

/// Smooth step: 0 for s <= 0.05, 1 for s >= 0.2, C-infinity in between.
double smooth_step(double s);

inline constexpr double kStepStart = 0.05;
inline constexpr double kStepEnd = 0.2;

struct DeformationData {
  double amplitude = 0.0;
  std::function<double(const Vector&)> F;
  VectorField X;
  VectorField JX;
  /// Symmetric endomorphism with eigenvalues e^F on X, e^-F on JX, 1 elsewhere.
  std::function<Matrix(const Vector&)> A;
  /// The metric is g_F(u, v) = g0(A^-1 u, A^-1 v).
  std::string convention = "gF(u,v) = g0(A^-1 u, A^-1 v)";
};

struct DeformedExample {
  MetricField metric;
  VectorField xi;
  DeformationData data;
  /// so(V1) + R xi.
  std::vector<LinearKillingField> invariance;
};

/// V1 = first 2n-2 coordinates, V2 = last 4. X(x) = x2 j - |x2|^-2 <x2 j, i x2> i x2,
/// JX = J0 X, F = c * smooth_step(|X|^2).
/// Throws DomainError for n < 3 or c < 0, and MetricDegeneracyError when
/// e^(-2c) < 1e-8.
DeformedExample build_gF(int n, double c);

// Irregular Sasakian metric.

struct IrregularMetricData {
  ExactReal a;
  double a_value = 0.0;
  Matrix T0;  // J0
  Matrix T1;  // i on V1
  Matrix T;   // T0 + a T1
  /// alpha = g0(T, T0)^-1.
  std::function<double(const Vector&)> alpha;
};

struct IrregularExample {
  MetricField metric;
  VectorField xi;  // T
  IrregularMetricData data;
  /// Declared invariance algebra u(1) + u(n): J1 and u(n) on V2.
  std::vector<LinearKillingField> invariance;
};

/// g(U, V) = u_T v_T + alpha g0(U_Q, V_Q) for U = u_T T + U_Q, U_Q in
/// Q = T0^perp, u_T = g0(U, T0) / g0(T, T0).
/// Throws DomainError unless 0 <= a < 1 and n >= 1.
IrregularExample build_irregular(int n, const ExactReal& a);

// Hopf fibration S^3 -> S^2 and lifts of Killing fields.

struct HopfBundleData {
  LinearKillingField xi;
  double orbit_length;

  HopfBundleData();

  /// pi(z) = (|z1|^2 - |z2|^2, 2 Re(z1 conj z2), 2 Im(z1 conj z2)).
  static Vector project(const Vector& p);
  /// d pi at p (3 x 4).
  static Matrix projection_jacobian(const Vector& p);
  /// A point of S^3 over y in S^2.
  static Vector lift_point(const Vector& y);
  /// Horizontal lift of the base vector w at y, evaluated at p over y.
  Vector horizontal_lift(const Vector& p, const Vector& w) const;
  /// F_y(u, w) = dxi(u*, w*).
  double curvature(const Vector& y, const Vector& u, const Vector& w) const;
};

struct HopfLift {
  /// Base rotation X(y) = R y, R in so(3).
  Matrix base_rotation;
  double f0 = 0.0;
  Vector anchor;
  int intervals = 10000;
  std::shared_ptr<const HopfBundleData> bundle;

  /// f at y, integrating -X -| F along the great circle from the anchor (via
  /// an auxiliary point when y is near the antipode).
  double potential(const Vector& y) const;
  /// Same integral along anchor -> waypoint -> y.
  double potential_via(const Vector& y, const Vector& waypoint) const;
  /// -F(X, .) at y as a covector of R^3 restricted to T_y.
  double minus_x_into_f(const Vector& y, const Vector& w) const;

  /// A = X* + f xi on S^3.
  VectorField field() const;
};

/// Solves df = -X -| F with f(anchor) = f0.
HopfLift solve_lift(const HopfBundleData& hopf, const Matrix& base_rotation, double f0 = 0.0);

/// The base Killing field X = d pi(A) of an A in u(2), as R in so(3).
/// Throws DomainError if A does not commute with xi.
Matrix base_projection(const HopfBundleData& hopf, const Matrix& a);

}  // namespace sasaki
