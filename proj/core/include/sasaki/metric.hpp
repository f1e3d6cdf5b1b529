#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "sasaki/common.hpp"
#include "sasaki/sphere.hpp"

namespace sasaki {

enum class MetricKind { kRound, kGFDeformation, kIrregularSasakian, kSignFlipped, kCustom };

std::string_view to_string(MetricKind kind);

/// Assertions on exact (closed-form) paths.
inline constexpr double kExactTolerance = 1e-10;
/// Assertions on finite-difference paths, relative to unit-scale tensors.
inline constexpr double kFiniteDifferenceTolerance = 1e-5;
/// Smallest admissible eigenvalue of a Gram matrix in an orthonormal frame.
inline constexpr double kPositivityMargin = 1e-8;

/// A Riemannian metric on S^(2n+1) in ambient tangential form: at p the
/// evaluator returns a symmetric N x N matrix G(p) with g_p(u,v) = u^T G(p) v
/// for u, v in T_p. Only the restriction to T_p is meaningful.
class MetricField {
 public:
  using GramFn = std::function<Matrix(const Vector&)>;

  MetricField(MetricKind kind, GramFn gram, bool exact_derivatives);

  static MetricField round();

  Matrix gram(const Vector& p) const { return (*gram_)(p); }
  double inner(const Vector& p, const Vector& u, const Vector& v) const;
  double operator()(const TangentVector& u, const TangentVector& v) const;

  MetricKind kind() const { return kind_; }
  /// True when covariant derivatives have a closed form (round metric only).
  bool exact_derivatives() const { return exact_; }

 private:
  MetricKind kind_;
  std::shared_ptr<const GramFn> gram_;
  bool exact_;
};

enum class FieldKind { kLinear, kCustom };

/// A tangent vector field on the sphere. Linear fields x -> Ax are evaluated
/// as the tangential projection of Ax (exactly Ax when A is skew).
class VectorField {
 public:
  using Fn = std::function<Vector(const Vector&)>;

  static VectorField linear(Matrix a, std::string label = {});
  static VectorField custom(Fn fn, std::string label = {});

  Vector operator()(const Vector& p) const;

  FieldKind kind() const { return matrix_ ? FieldKind::kLinear : FieldKind::kCustom; }
  const std::optional<Matrix>& matrix() const { return matrix_; }
  bool is_skew_linear() const;
  const std::string& label() const { return label_; }

  VectorField operator-() const;

 private:
  VectorField() = default;
  std::optional<Matrix> matrix_;
  std::shared_ptr<const Fn> fn_;
  std::string label_;
};

struct FdOptions {
  double step = 1e-4;
  /// Maximum allowed |Q(h) - Q(h/2)| relative to max(1, |Q|).
  double richardson_tolerance = 1e-3;
};

/// Orthonormal frame of (T_p, g) as N x (N-1) columns: the round tangent
/// frame re-orthonormalized in g. Throws MetricDegeneracyError if the Gram
/// matrix has an eigenvalue below kPositivityMargin.
Matrix metric_orthonormal_frame(const MetricField& g, const Vector& p);

/// Smallest eigenvalue of g_p in a round-orthonormal tangent frame.
double min_gram_eigenvalue(const MetricField& g, const Vector& p);

/// Ambient matrix B with B v = nabla_v X for v in T_p (B p = 0).
/// Round metric and linear X use the closed form P A - <Ap,p> P restricted to
/// T_p; everything else goes through Christoffel symbols in a stereographic
/// chart with Richardson-extrapolated central differences.
Matrix covariant_derivative_matrix(const MetricField& g, const VectorField& x, const Vector& p,
                                   const FdOptions& fd = {});

/// Same quantity, always through the chart finite-difference path.
Matrix covariant_derivative_matrix_fd(const MetricField& g, const VectorField& x,
                                      const Vector& p, const FdOptions& fd = {});

TangentVector covariant_derivative(const MetricField& g, const VectorField& x,
                                   const TangentVector& v, const FdOptions& fd = {});

/// Second covariant derivative (nabla^2 X)(u, v) = (nabla_u nabla X)(v) at a point.
class SecondDerivative {
 public:
  using Fn = std::function<Vector(const Vector&, const Vector&)>;
  explicit SecondDerivative(Fn fn) : fn_(std::move(fn)) {}

  Vector apply(const Vector& u, const Vector& v) const { return fn_(u, v); }

 private:
  Fn fn_;
};

/// Closed form for the round metric and skew X = Ax:
/// (nabla^2 X)(u,v) = <X,v> u - <u,v> X. Otherwise nested chart differences.
SecondDerivative second_covariant_derivative(const MetricField& g, const VectorField& x,
                                             const Vector& p, const FdOptions& fd = {});
SecondDerivative second_covariant_derivative_fd(const MetricField& g, const VectorField& x,
                                                const Vector& p, const FdOptions& fd = {});

/// dxi as an ambient antisymmetric matrix W: dxi(u,v) = u^T W v on T_p, with
/// dxi(u,v) = g(nabla_u xi, v) - g(nabla_v xi, u).
Matrix exterior_derivative_xi(const MetricField& g, const VectorField& xi, const Vector& p,
                              const FdOptions& fd = {});

/// phi with g(phi u, v) = 1/2 dxi(u, v), as an ambient endomorphism of T_p.
/// Equals +nabla xi for Killing xi. Throws MetricDegeneracyError on a
/// singular Gram matrix.
Matrix extract_phi(const MetricField& g, const VectorField& xi, const Vector& p,
                   const FdOptions& fd = {});

/// (L_X g)(u,v) = g(nabla_u X, v) + g(nabla_v X, u).
double lie_derivative_metric(const MetricField& g, const VectorField& x, const Vector& p,
                             const Vector& u, const Vector& v, const FdOptions& fd = {});

/// L_X g at p as an ambient symmetric bilinear form.
Matrix lie_derivative_form(const MetricField& g, const VectorField& x, const Vector& p,
                           const FdOptions& fd = {});

/// eta = g(xi, .), dxi and phi of a field, evaluated lazily per point.
class StructureTensors {
 public:
  StructureTensors(MetricField g, VectorField xi, FdOptions fd = {});

  const VectorField& xi() const { return xi_; }
  const MetricField& metric() const { return g_; }
  /// eta as the ambient covector G(p) xi(p).
  Vector eta(const Vector& p) const;
  Matrix dxi(const Vector& p) const;
  Matrix phi(const Vector& p) const;

 private:
  MetricField g_;
  VectorField xi_;
  FdOptions fd_;
};

}  // namespace sasaki
