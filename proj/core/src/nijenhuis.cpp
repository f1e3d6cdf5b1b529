#include <algorithm>

#include "chart_patch.hpp"
#include "sasaki/verify.hpp"
#include "verify_detail.hpp"

namespace sasaki {

namespace {

/// g-orthogonal projection onto xi^perp at q.
Vector project_q(const Matrix& gram, const Vector& xi, const Vector& v) {
  return v - (xi.dot(gram * v) / xi.dot(gram * xi)) * xi;
}

/// Columns [X_1..X_m, JX_1..JX_m] of the extended fields at q.
Matrix extended_fields(const MetricField& g, const VectorField& xi, const Vector& q,
                       const std::vector<Vector>& vectors, const FdOptions& fd) {
  const auto m = static_cast<Eigen::Index>(vectors.size());
  const Matrix gram = g.gram(q);
  const Vector xq = xi(q);
  const Matrix phi = extract_phi(g, xi, q, fd);
  Matrix out(q.size(), 2 * m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const Vector& c = vectors[static_cast<std::size_t>(a)];
    const Vector x = project_q(gram, xq, c - c.dot(q) * q);
    out.col(a) = x;
    out.col(m + a) = phi * x;
  }
  return out;
}

Vector on_sphere(const Vector& v) { return v / v.norm(); }

}  // namespace

std::vector<Vector> nijenhuis_pairs(const MetricField& g, const VectorField& xi, const Vector& p,
                                    const std::vector<Vector>& vectors, const FdOptions& fd) {
  const auto m = static_cast<Eigen::Index>(vectors.size());
  const Matrix at_p = extended_fields(g, xi, p, vectors, fd);
  const Matrix gram = g.gram(p);
  const Vector xp = xi(p);
  const Matrix phi = extract_phi(g, xi, p, fd);

  // deriv[w] = D_{field w} of every field, along the curve normalize(p + t W).
  std::vector<Matrix> deriv;
  deriv.reserve(static_cast<std::size_t>(2 * m));
  for (Eigen::Index w = 0; w < 2 * m; ++w) {
    const Vector dir = at_p.col(w);
    deriv.push_back(detail::richardson(
        [&](double h) -> Matrix {
          return (extended_fields(g, xi, on_sphere(p + h * dir), vectors, fd) -
                  extended_fields(g, xi, on_sphere(p - h * dir), vectors, fd)) /
                 (2.0 * h);
        },
        fd, "Nijenhuis bracket"));
  }
  const auto bracket = [&](Eigen::Index a, Eigen::Index b) -> Vector {
    return deriv[static_cast<std::size_t>(a)].col(b) - deriv[static_cast<std::size_t>(b)].col(a);
  };

  std::vector<Vector> out;
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = a + 1; b < m; ++b) {
      const Eigen::Index ja = m + a;
      const Eigen::Index jb = m + b;
      const Vector four_n = bracket(ja, jb) - phi * project_q(gram, xp, bracket(ja, b)) -
                            phi * project_q(gram, xp, bracket(a, jb)) - bracket(a, b);
      out.push_back(0.25 * four_n);
    }
  }
  return out;
}

VerificationReport nijenhuis_residual(const MetricField& g, const VectorField& xi,
                                      const SampleSet& samples, const FdOptions& fd,
                                      double tolerance) {
  VerificationReport report;
  report.name = "nijenhuis";
  report.tolerance = tolerance;
  detail::stamp(report, g, &xi, samples);
  ResidualAccumulator acc;
  for (const auto& sp : samples.points) {
    const Vector& p = sp.coords();
    const Matrix gram = g.gram(p);
    const Matrix frame = metric_orthonormal_frame(g, p);
    // g-orthonormal basis of Q_p: complement of xi inside the frame.
    const Vector coords = frame.transpose() * gram * xi(p);
    const Eigen::HouseholderQR<Matrix> qr{Matrix(coords)};
    const Matrix q = qr.householderQ() * Matrix::Identity(coords.size(), coords.size());
    const Matrix basis = frame * q.rightCols(coords.size() - 1);
    std::vector<Vector> vectors;
    for (Eigen::Index a = 0; a < basis.cols(); ++a) vectors.emplace_back(basis.col(a));
    double worst = 0.0;
    for (const auto& n : nijenhuis_pairs(g, xi, p, vectors, fd)) {
      worst = std::max(worst, detail::g_norm(n, gram));
    }
    acc.add(worst);
  }
  acc.finish(report);
  return report;
}

}  // namespace sasaki
