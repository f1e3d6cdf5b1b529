#include <array>
#include <cmath>

#include "sasaki/verify.hpp"
#include "verify_detail.hpp"

namespace sasaki {

namespace {

constexpr double kEigenTolerance = 1e-4;

}  // namespace

Matrix distribution_d(const MetricField& g, const Vector& p, const VectorField& xi1,
                      const VectorField& xi2, const VectorField& xi3) {
  const Matrix frame = metric_orthonormal_frame(g, p);
  const Matrix gram = g.gram(p);
  Matrix xs(p.size(), 3);
  xs << xi1(p), xi2(p), xi3(p);
  const Matrix coords = frame.transpose() * gram * xs;
  const Eigen::HouseholderQR<Matrix> qr(coords);
  const Matrix r = qr.matrixQR().topRows(3).triangularView<Eigen::Upper>();
  if (r.diagonal().cwiseAbs().minCoeff() < 1e-8) {
    throw PreconditionError("distribution D: xi1, xi2, xi3 are linearly dependent");
  }
  const Matrix q = qr.householderQ() * Matrix::Identity(coords.rows(), coords.rows());
  return frame * q.rightCols(coords.rows() - 3);
}

std::vector<Matrix> contact_endomorphisms(const MetricField& g, const VectorField& xi1,
                                          const VectorField& xi2, const VectorField& xi3,
                                          const Vector& p, const FdOptions& fd) {
  return {-extract_phi(g, xi1, p, fd), -extract_phi(g, xi2, p, fd), -extract_phi(g, xi3, p, fd)};
}

PointSplit split_endomorphisms(const Matrix& gram, const Matrix& d_basis, const Matrix& phi1,
                               const Matrix& phi2, const Matrix& phi3) {
  const Eigen::Index k = d_basis.cols();
  PointSplit out;
  if (k == 0) {
    out.d_plus = d_basis;
    out.d_minus = d_basis;
    out.eigenvalues = Vector(0);
    return out;
  }
  const Matrix images = phi1 * (phi2 * (phi3 * d_basis));
  const Matrix m = d_basis.transpose() * gram * images;
  const double leak = detail::images_norm(images - d_basis * m, gram);
  if (leak > kEigenTolerance) {
    throw StructuralError("phi1 phi2 phi3 does not preserve D (leak " + std::to_string(leak) + ")");
  }
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kEigenTolerance) {
    throw StructuralError("phi1 phi2 phi3 is not self-adjoint on D (" + std::to_string(asym) + ")");
  }
  out.square_residual = (m * m - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();

  const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.transpose()));
  out.eigenvalues = eig.eigenvalues();
  std::vector<Eigen::Index> plus, minus;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double lambda = out.eigenvalues(i);
    if (std::abs(lambda - 1.0) <= kEigenTolerance) {
      plus.push_back(i);
    } else if (std::abs(lambda + 1.0) <= kEigenTolerance) {
      minus.push_back(i);
    } else {
      throw StructuralError("phi1 phi2 phi3 has eigenvalue " + std::to_string(lambda) +
                            " on D, expected +-1");
    }
  }
  const Matrix& vecs = eig.eigenvectors();
  Matrix vp(k, static_cast<Eigen::Index>(plus.size()));
  Matrix vm(k, static_cast<Eigen::Index>(minus.size()));
  for (std::size_t i = 0; i < plus.size(); ++i) vp.col(static_cast<Eigen::Index>(i)) = vecs.col(plus[i]);
  for (std::size_t i = 0; i < minus.size(); ++i) vm.col(static_cast<Eigen::Index>(i)) = vecs.col(minus[i]);
  out.d_plus = d_basis * vp;
  out.d_minus = d_basis * vm;

  const Matrix pp = vp * vp.transpose();
  const Matrix pm = vm * vm.transpose();
  out.projector_residual = std::max((pp + pm - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(),
                                    (pp * pm).cwiseAbs().maxCoeff());
  return out;
}

PointSplit split_d_at(const MetricField& g, const VectorField& xi1, const VectorField& xi2,
                      const VectorField& xi3, const Vector& p, const FdOptions& fd) {
  const auto phis = contact_endomorphisms(g, xi1, xi2, xi3, p, fd);
  PointSplit out = split_endomorphisms(g.gram(p), distribution_d(g, p, xi1, xi2, xi3), phis[0],
                                       phis[1], phis[2]);
  out.point = p;
  return out;
}

SplittingResult split_D(const MetricField& g, const VectorField& xi1, const VectorField& xi2,
                        const VectorField& xi3, const SampleSet& samples, const FdOptions& fd) {
  SplittingResult out;
  out.metric = g;
  out.fields = {xi1, xi2, xi3};
  out.fd = fd;
  out.constant_dims = true;
  for (const auto& sp : samples.points) {
    PointSplit s = split_d_at(g, xi1, xi2, xi3, sp.coords(), fd);
    out.max_square_residual = std::max(out.max_square_residual, s.square_residual);
    out.max_projector_residual = std::max(out.max_projector_residual, s.projector_residual);
    const auto dp = static_cast<int>(s.d_plus.cols());
    const auto dm = static_cast<int>(s.d_minus.cols());
    if (out.points.empty()) {
      out.dim_plus = dp;
      out.dim_minus = dm;
    } else if (dp != out.dim_plus || dm != out.dim_minus) {
      out.constant_dims = false;
    }
    out.points.push_back(std::move(s));
  }
  if (!out.constant_dims) {
    out.dim_plus = -1;
    out.dim_minus = -1;
  }
  return out;
}

Matrix sign_flip_gram(const Matrix& gram, const Matrix& d_plus) {
  const Matrix gb = gram * d_plus;
  return gram - 2.0 * gb * gb.transpose();
}

Matrix reassociate_endomorphism(const Matrix& flipped_gram, const Matrix& gram, const Matrix& phi) {
  const Eigen::FullPivLU<Matrix> lu(flipped_gram);
  if (!lu.isInvertible()) throw MetricDegeneracyError("flipped form is degenerate");
  return lu.solve(gram * phi);
}

double quaternionic_residual(const Matrix& inner, const Matrix& d_basis, const Matrix& phi1,
                             const Matrix& phi2, const Matrix& phi3) {
  const std::array<const Matrix*, 3> phi{&phi1, &phi2, &phi3};
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const Matrix& a = *phi[i];
    const Matrix& b = *phi[(i + 1) % 3];
    const Matrix& c = *phi[(i + 2) % 3];
    worst = std::max(worst, detail::images_norm(a * (a * d_basis) + d_basis, inner));
    worst = std::max(worst, detail::images_norm(a * (b * d_basis) - c * d_basis, inner));
  }
  return worst;
}

MetricField sign_flip_metric(const MetricField& g, const SplittingResult& split) {
  if (!split.constant_dims) {
    throw PreconditionError("sign flip: dim D+ is not constant across samples");
  }
  if (split.dim_plus == 0) return g;
  if (!split.metric || split.fields.size() != 3) {
    throw PreconditionError("sign flip: splitting carries no generating fields");
  }
  const MetricField base = *split.metric;
  const std::vector<VectorField> xis = split.fields;
  const FdOptions fd = split.fd;
  return MetricField(
      MetricKind::kSignFlipped,
      [g, base, xis, fd](const Vector& p) -> Matrix {
        const PointSplit s = split_d_at(base, xis[0], xis[1], xis[2], p, fd);
        return sign_flip_gram(g.gram(p), s.d_plus);
      },
      false);
}

}  // namespace sasaki
