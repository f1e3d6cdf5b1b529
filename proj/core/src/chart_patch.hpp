#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "sasaki/metric.hpp"

namespace sasaki::detail {

/// Richardson step-halving: evaluates f(h) and f(h/2), rejects the pair when
/// they disagree beyond `tolerance` (relative to max(1, |f|)), and returns the
/// extrapolated (4 f(h/2) - f(h)) / 3.
template <class F>
Matrix richardson(F&& f, const FdOptions& fd, std::string_view what) {
  const Matrix coarse = f(fd.step);
  const Matrix fine = f(0.5 * fd.step);
  const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
  const double gap = (coarse - fine).cwiseAbs().maxCoeff();
  if (!(gap <= fd.richardson_tolerance * scale)) {
    throw NumericalQualityError(std::string(what) +
                                ": finite differences at h and h/2 disagree by " +
                                std::to_string(gap));
  }
  return (4.0 * fine - coarse) / 3.0;
}

/// Differentiation of a metric and fields in the stereographic chart around p.
/// Rank-3 chart tensors T^k_ij are stored as d x d^2 matrices, column i*d+j.
class ChartPatch {
 public:
  ChartPatch(const MetricField& g, const Vector& p);

  Eigen::Index dim() const { return u0_.size(); }
  const Vector& origin() const { return u0_; }

  Matrix frame(const Vector& u) const;
  Matrix metric(const Vector& u) const;
  Vector components(const VectorField& x, const Vector& u) const;
  /// Gamma^k_ij at u with central differences of step h.
  Matrix christoffel(const Vector& u, double h) const;
  /// M^k_j = d_j X^k + Gamma^k_jl X^l, i.e. nabla_{d_j} X = M^k_j d_k.
  Matrix nabla(const VectorField& x, const Vector& u, double h) const;
  /// (nabla_{d_i} nabla X)(d_j) = H^k_ij d_k, outer step h; inner covariant
  /// derivatives are Richardson-extrapolated with `inner`.
  Matrix hessian(const VectorField& x, const Vector& u, double h, const FdOptions& inner) const;

  /// d x N matrix taking ambient tangent vectors at u to chart components.
  Matrix to_components(const Vector& u) const;

 private:
  const MetricField& g_;
  Chart chart_;
  Vector u0_;
};

}  // namespace sasaki::detail
