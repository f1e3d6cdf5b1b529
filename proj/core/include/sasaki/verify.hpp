#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sasaki/common.hpp"
#include "sasaki/metric.hpp"
#include "sasaki/sphere.hpp"

namespace sasaki {

/// Max residual a check expected to fail must exceed.
inline constexpr double kFailFloor = 1e-2;

/// Outcome of one residual check over a sample set.
///
/// For a non-degenerate report, pass <=> max_residual < tolerance. A report
/// is degenerate when its preconditions failed (zero field, non-unit or
/// non-Killing xi); it never passes, and its residuals are those of the main
/// identity evaluated anyway.
struct VerificationReport {
  std::string name;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool degenerate = false;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<std::string> notes;
  std::vector<VerificationReport> children;

  bool fails_clearly(double floor = kFailFloor) const { return max_residual > floor; }
  /// Child by name; throws std::out_of_range if absent.
  const VerificationReport& child(const std::string& child_name) const;
};

/// Accumulates per-sample residuals into a report.
class ResidualAccumulator {
 public:
  void add(double r);
  /// Fills max/mean and sets pass from the tolerance (unless degenerate).
  void finish(VerificationReport& report) const;
  std::size_t count() const { return count_; }

 private:
  double max_ = 0.0;
  double sum_ = 0.0;
  std::size_t count_ = 0;
  bool nan_ = false;
};

/// Operator norm of an ambient endomorphism restricted to T_p, measured with
/// a g-orthonormal frame F (columns) and the Gram matrix G.
double frame_operator_norm(const Matrix& endo, const Matrix& frame, const Matrix& gram);

/// Killing residual: max over samples of the operator norm of L_X g in a
/// g-orthonormal frame, divided by max |X|_g over the samples.
/// Tolerance defaults to 1e-10 on the closed-form path and 1e-5 otherwise.
VerificationReport check_killing(const MetricField& g, const VectorField& x,
                                 const SampleSet& samples, const FdOptions& fd = {},
                                 std::optional<double> tolerance = std::nullopt);

/// |g(xi, xi) - 1|.
VerificationReport check_unit_length(const MetricField& g, const VectorField& xi,
                                     const SampleSet& samples, double tolerance = kExactTolerance);

/// The constant c for which (nabla_u nabla xi)(v) = c [g(u,v) xi - g(xi,v) u]
/// holds for the standard structure of the round S^3. Fitted once by least
/// squares on fixed points and snapped to +-1.
double sasakian_calibration();
/// The unsnapped least-squares value behind sasakian_calibration().
double sasakian_calibration_fit();

/// Residual of (nabla_u nabla xi)(v) - c [g(u,v) xi - g(xi,v) u] over pairs of
/// a g-orthonormal frame (max g-norm per sample). Unit length and Killing
/// are checked first and attached as children.
VerificationReport check_sasakian(const MetricField& g, const VectorField& xi,
                                  const SampleSet& samples, const FdOptions& fd = {},
                                  double tolerance = kFiniteDifferenceTolerance);

/// Residual of phi^2 + Id - eta (x) xi (operator norm), phi from extract_phi.
VerificationReport check_kcontact(const MetricField& g, const VectorField& xi,
                                  const SampleSet& samples, const FdOptions& fd = {},
                                  double tolerance = kFiniteDifferenceTolerance);

/// Children: "orthonormality", "sasakian-1..3", and the two readings of the
/// signed relations:
///   "relations-plus-nabla": phi_i = nabla xi_i,  phi_j phi_i = sgn phi_k - eta_j (x) xi_i
///   "relations-minus-nabla": phi_i = -nabla xi_i, phi_i phi_j = sgn phi_k + eta_j (x) xi_i
/// over all six permutations (i,j,k), sgn the permutation sign and
/// (eta (x) xi)(v) = eta(v) xi. metadata["holding_variants"] lists the
/// variants that pass. The top-level residual takes the better variant.
VerificationReport check_3sasakian(const MetricField& g, const VectorField& xi1,
                                   const VectorField& xi2, const VectorField& xi3,
                                   const SampleSet& samples, const FdOptions& fd = {},
                                   double tolerance = kFiniteDifferenceTolerance);

struct FrLemmaResult {
  VerificationReport report;
  /// Skew matrix C with xi3 = nabla_{xi1} xi2 = P(C x), when the fit succeeded.
  std::optional<Matrix> xi3_matrix;
};

/// Builds xi3 := nabla_{xi1} xi2 pointwise, fits it by a constant-coefficient
/// linear field (child "linear-fit") and checks the resulting triple with
/// check_3sasakian (child "3-sasakian").
/// Throws PreconditionError if xi1, xi2 are not orthogonal within 1e-8 or
/// either fails check_sasakian.
FrLemmaResult check_fr_lemma(const MetricField& g, const VectorField& xi1,
                             const VectorField& xi2, const SampleSet& samples,
                             const FdOptions& fd = {},
                             double tolerance = kFiniteDifferenceTolerance);

/// Children "ac12", "ac13", "ac23" (phi_a phi_b + phi_b phi_a = eta_a (x) xi_b +
/// eta_b (x) xi_a) and "square2", "square3" (phi_a^2 = -1 + eta_a (x) xi_a).
VerificationReport check_ac_identities(const MetricField& g, const VectorField& xi1,
                                       const VectorField& xi2, const VectorField& xi3,
                                       const SampleSet& samples, const FdOptions& fd = {},
                                       double tolerance = kFiniteDifferenceTolerance);

/// Eigen-splitting of P = phi1 phi2 phi3 on a subspace D at one point.
struct PointSplit {
  Vector point;
  /// g-orthonormal bases (columns, ambient coordinates).
  Matrix d_plus;
  Matrix d_minus;
  Vector eigenvalues;
  double square_residual = 0.0;     // |P^2 - Id| on D
  double projector_residual = 0.0;  // max of |P+ + P- - Id|, |P+ P-| on D
};

/// Splits D (g-orthonormal columns of `d_basis`) into the +-1 eigenspaces of
/// P = phi1 phi2 phi3. Throws StructuralError when P does not preserve D or
/// has an eigenvalue farther than 1e-4 from +-1.
PointSplit split_endomorphisms(const Matrix& gram, const Matrix& d_basis, const Matrix& phi1,
                               const Matrix& phi2, const Matrix& phi3);

struct SplittingResult {
  std::vector<PointSplit> points;
  bool constant_dims = false;
  int dim_plus = -1;  // -1 when not constant
  int dim_minus = -1;
  double max_square_residual = 0.0;
  double max_projector_residual = 0.0;

  /// Generators, kept so that the split can be recomputed at any point.
  std::optional<MetricField> metric;
  std::vector<VectorField> fields;
  FdOptions fd;
};

/// g-orthonormal basis of D = {xi1, xi2, xi3}^perp in T_p.
Matrix distribution_d(const MetricField& g, const Vector& p, const VectorField& xi1,
                      const VectorField& xi2, const VectorField& xi3);

/// The three endomorphisms with the sign phi_i = -nabla xi_i = (1/2) dxi_i.
std::vector<Matrix> contact_endomorphisms(const MetricField& g, const VectorField& xi1,
                                          const VectorField& xi2, const VectorField& xi3,
                                          const Vector& p, const FdOptions& fd = {});

PointSplit split_d_at(const MetricField& g, const VectorField& xi1, const VectorField& xi2,
                      const VectorField& xi3, const Vector& p, const FdOptions& fd = {});

/// Per-sample D+- splitting with phi_i = -nabla xi_i.
SplittingResult split_D(const MetricField& g, const VectorField& xi1, const VectorField& xi2,
                        const VectorField& xi3, const SampleSet& samples,
                        const FdOptions& fd = {});

/// h = g with the sign changed on D+ (g-orthonormal columns of d_plus).
Matrix sign_flip_gram(const Matrix& gram, const Matrix& d_plus);

/// The endomorphism psi with h(psi u, v) = g(phi u, v), i.e. the one
/// associated through h to the same two-form.
Matrix reassociate_endomorphism(const Matrix& flipped_gram, const Matrix& gram, const Matrix& phi);

/// Max over the relations phi_i^2 = -Id, phi_i phi_j = phi_k ((i,j,k) cyclic)
/// of the operator norm on D (columns of d_basis, orthonormal for `inner`).
double quaternionic_residual(const Matrix& inner, const Matrix& d_basis, const Matrix& phi1,
                             const Matrix& phi2, const Matrix& phi3);

/// Metric equal to g on D- + span(xi_i) and to -g on D+. Returns g itself
/// when D+ = {0}. Throws PreconditionError when dim D+ varies across samples
/// or the split carries no generators.
MetricField sign_flip_metric(const MetricField& g, const SplittingResult& split);

/// N(X,Y) for every pair of the given vectors of Q_p (extended as in
/// nijenhuis_residual), as a list ordered (0,1), (0,2), ..., (1,2), ...
std::vector<Vector> nijenhuis_pairs(const MetricField& g, const VectorField& xi, const Vector& p,
                                    const std::vector<Vector>& vectors, const FdOptions& fd = {});

/// 4N(X,Y) = [JX,JY] - J[JX,Y]^Q - J[X,JY]^Q - [X,Y] with J = phi on
/// Q = xi^perp; max |N|_g over pairs of a g-orthonormal frame of Q at each
/// sample. Frame vectors c are extended by X(q) = Pi_Q(q)(c - <c,q> q).
/// Assumes (g, xi) is K-contact.
VerificationReport nijenhuis_residual(const MetricField& g, const VectorField& xi,
                                      const SampleSet& samples, const FdOptions& fd = {},
                                      double tolerance = 1e-4);

}  // namespace sasaki
