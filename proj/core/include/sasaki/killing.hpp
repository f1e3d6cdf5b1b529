#pragma once

#include <span>
#include <string>
#include <vector>

#include "sasaki/common.hpp"
#include "sasaki/metric.hpp"
#include "sasaki/sphere.hpp"

namespace sasaki {

/// A skew-symmetric ambient matrix A, inducing the Killing field x -> Ax of
/// the round sphere.
class LinearKillingField {
 public:
  /// Throws DomainError unless A is square and A + A^T == 0 exactly.
  explicit LinearKillingField(Matrix a);

  const Matrix& matrix() const { return a_; }
  Eigen::Index ambient_dim() const { return a_.rows(); }
  Vector operator()(const Vector& p) const { return a_ * p; }
  VectorField field(std::string label = {}) const { return VectorField::linear(a_, std::move(label)); }

 private:
  Matrix a_;
};

struct LinearFit {
  /// Skew matrix C minimizing the misfit of x -> P(Cx) to the field.
  Matrix matrix;
  /// max over samples of |P(Cp) - X(p)|.
  double max_residual = 0.0;
};

/// Least-squares linear Killing approximation of a tangent field (the
/// minimum-norm solution is trace free, then its skew part is taken).
LinearFit fit_linear_field(const VectorField& x, const SampleSet& samples);

/// Matrix of the vector-field bracket [Ax, Bx] = D_{Ax}(Bx) - D_{Bx}(Ax),
/// which is x -> (BA - AB) x.
LinearKillingField bracket(const LinearKillingField& a, const LinearKillingField& b);

/// A finite-dimensional algebra of linear Killing fields, closed under the
/// bracket, with the invariant inner product B(X,Y) = -tr(XY).
class IsometryAlgebra {
 public:
  /// Validates linear independence and closure (residual 1e-10).
  explicit IsometryAlgebra(std::vector<LinearKillingField> basis);

  /// so(dim) with basis E_ij - E_ji, i < j.
  static IsometryAlgebra so(int dim);
  /// The maximal torus spanned by rotations of the coordinate planes (2k, 2k+1).
  static IsometryAlgebra plane_rotations(int dim);

  int dim() const { return static_cast<int>(basis_.size()); }
  Eigen::Index ambient_dim() const { return basis_.front().ambient_dim(); }
  const std::vector<LinearKillingField>& basis() const { return basis_; }
  /// Gram matrix of B on the basis.
  const Matrix& gram() const { return gram_; }

  static double inner(const Matrix& x, const Matrix& y) { return -(x * y).trace(); }

  /// Coordinates of x in the basis; throws DomainError if x is not in the span.
  Vector coordinates(const Matrix& x) const;
  bool contains(const Matrix& x) const;
  Matrix element(const Vector& coords) const;

 private:
  std::vector<LinearKillingField> basis_;
  Matrix gram_;
};

/// Matrix of X -> [xi, X] in the algebra's basis.
/// Throws DomainError if xi is outside the algebra.
Matrix ad_matrix(const IsometryAlgebra& alg, const LinearKillingField& xi);

struct EigenBlock {
  double lambda = 0.0;
  /// Real basis arranged in pairs (X, [xi,X]/lambda).
  std::vector<LinearKillingField> basis;
};

/// g = g_0 + g_lambda1 + ... + g_lambdas with ad_xi = 0 on g_0 and
/// (ad_xi)^2 = -lambda_k^2 on g_lambdak, lambda_k > 0 increasing.
struct StandardDecomposition {
  std::vector<LinearKillingField> zero_space;
  std::vector<EigenBlock> pairs;

  int total_dim() const;
};

inline constexpr double kClusterTolerance = 1e-8;
inline constexpr double kClusterGap = 1e-6;

/// Groups the eigenvalues of (ad_xi)^2 (in a B-orthonormal basis) into clusters.
/// Throws DegeneracyError when two clusters are closer than kClusterGap.
StandardDecomposition standard_decomposition(const IsometryAlgebra& alg,
                                             const LinearKillingField& xi);

struct DecompositionResiduals {
  double zero_space = 0.0;      // max |[xi, X]| on g_0
  double eigen_blocks = 0.0;    // max |[xi,[xi,X]] + lambda^2 X|
  double reconstruction = 0.0;  // |ad_xi - sum of blocks| in the basis
  double antisymmetry = 0.0;    // max |B([xi,X],Y) + B(X,[xi,Y])|
};

DecompositionResiduals decomposition_residuals(const IsometryAlgebra& alg,
                                               const LinearKillingField& xi,
                                               const StandardDecomposition& dec);

struct PerLemmaFieldResult {
  std::string name;
  double lambda = 0.0;
  double max_orthogonality = 0.0;  // max |g(A, xi)|
  double max_bracket = 0.0;        // max |[xi,A] + A -| dxi|_g
  double max_eigen = 0.0;          // max |(dxi o dxi) A + lambda^2 A|_g
  bool pass = false;
};

struct PerLemmaReport {
  std::vector<PerLemmaFieldResult> fields;
  double tolerance = 1e-6;
  bool pass = false;
};

/// Checks one field A of g_lambda: A orthogonal to xi, L_xi A = -A -| dxi,
/// and A an eigenvector of dxi o dxi for -lambda^2, at every sample.
/// Throws PreconditionError when [xi, A] = 0 (A in g_0).
PerLemmaFieldResult verify_per_field(const MetricField& g, const LinearKillingField& xi,
                                     const LinearKillingField& a, double lambda,
                                     const SampleSet& samples, const FdOptions& fd = {},
                                     double tolerance = 1e-6);

PerLemmaReport verify_per_lemma(const MetricField& g, const StandardDecomposition& dec,
                                const LinearKillingField& xi, const SampleSet& samples,
                                const FdOptions& fd = {}, double tolerance = 1e-6);

struct PointwiseSpectrum {
  /// Ascending eigenvalues of dxi o dxi (endomorphism via g), one list per sample.
  std::vector<Vector> eigenvalues;
  /// Per sorted index: max - min across samples.
  Vector spread;
  /// Values whose spread is below the constancy threshold (deduplicated).
  std::vector<double> constant_values;
  double constancy_threshold = 1e-5;
};

PointwiseSpectrum pointwise_dxi_eigenvalues(const MetricField& g, const VectorField& xi,
                                            const SampleSet& samples, const FdOptions& fd = {});

/// Ascending eigenvalues of dxi o dxi at one point.
Vector dxi_square_eigenvalues(const MetricField& g, const VectorField& xi, const Vector& p,
                              const FdOptions& fd = {});

struct CentralizerReport {
  bool central = false;
  double max_residual = 0.0;
};

/// True iff every Y in `lambda` commutes with every basis element (1e-10).
/// Throws DomainError if some Y is outside the algebra.
CentralizerReport centralizer_check(const IsometryAlgebra& alg,
                                    std::span<const LinearKillingField> lambda);

}  // namespace sasaki
