#include "sasaki/killing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace sasaki {

LinearKillingField::LinearKillingField(Matrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() == 0) {
    throw DomainError("linear Killing field: matrix must be square and non-empty");
  }
  if ((a_ + a_.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw DomainError("linear Killing field: matrix is not skew-symmetric");
  }
}

LinearKillingField bracket(const LinearKillingField& a, const LinearKillingField& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DomainError("bracket: dimension mismatch");
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  // BA - AB is skew whenever A and B are; symmetrize away rounding.
  Matrix c = y * x - x * y;
  c = 0.5 * (c - c.transpose()).eval();
  return LinearKillingField(std::move(c));
}

LinearFit fit_linear_field(const VectorField& x, const SampleSet& samples) {
  if (samples.points.empty()) throw DomainError("linear fit: no samples");
  const auto dim = samples.points.front().ambient_dim();
  std::vector<Vector> values;
  Matrix system(dim * static_cast<Eigen::Index>(samples.points.size()), dim * dim);
  Vector rhs(system.rows());
  Eigen::Index row = 0;
  for (const auto& sp : samples.points) {
    const Vector& p = sp.coords();
    values.push_back(x(p));
    // P C p = (p^T kron P) vec(C), column-major vec.
    const Matrix proj = tangent_projector(p);
    for (Eigen::Index col = 0; col < dim; ++col) {
      system.block(row, col * dim, dim, dim) = p(col) * proj;
    }
    rhs.segment(row, dim) = values.back();
    row += dim;
  }
  const Vector vec_c = system.completeOrthogonalDecomposition().solve(rhs);
  const Matrix c = Eigen::Map<const Matrix>(vec_c.data(), dim, dim);
  LinearFit out;
  out.matrix = 0.5 * (c - c.transpose());
  for (std::size_t s = 0; s < samples.points.size(); ++s) {
    const Vector& p = samples.points[s].coords();
    out.max_residual = std::max(out.max_residual, (out.matrix * p - values[s]).norm());
  }
  return out;
}

IsometryAlgebra::IsometryAlgebra(std::vector<LinearKillingField> basis) : basis_(std::move(basis)) {
  if (basis_.empty()) throw DomainError("isometry algebra: empty basis");
  const auto dim = basis_.front().ambient_dim();
  const auto k = static_cast<Eigen::Index>(basis_.size());
  gram_.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (basis_[static_cast<std::size_t>(i)].ambient_dim() != dim) {
      throw DomainError("isometry algebra: mixed ambient dimensions");
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      gram_(i, j) = inner(basis_[static_cast<std::size_t>(i)].matrix(),
                          basis_[static_cast<std::size_t>(j)].matrix());
    }
  }
  const double lo =
      Eigen::SelfAdjointEigenSolver<Matrix>(gram_, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (!(lo > 1e-12)) throw DomainError("isometry algebra: basis is linearly dependent");

  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      if (!contains(bracket(basis_[i], basis_[j]).matrix())) {
        throw DomainError("isometry algebra: basis is not closed under the bracket");
      }
    }
  }
}

IsometryAlgebra IsometryAlgebra::so(int dim) {
  std::vector<LinearKillingField> basis;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      Matrix e = Matrix::Zero(dim, dim);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      basis.emplace_back(std::move(e));
    }
  }
  return IsometryAlgebra(std::move(basis));
}

IsometryAlgebra IsometryAlgebra::plane_rotations(int dim) {
  std::vector<LinearKillingField> basis;
  for (int k = 0; 2 * k + 1 < dim; ++k) {
    Matrix e = Matrix::Zero(dim, dim);
    e(2 * k + 1, 2 * k) = 1.0;
    e(2 * k, 2 * k + 1) = -1.0;
    basis.emplace_back(std::move(e));
  }
  return IsometryAlgebra(std::move(basis));
}

Vector IsometryAlgebra::coordinates(const Matrix& x) const {
  if (x.rows() != ambient_dim() || x.cols() != ambient_dim()) {
    throw DomainError("isometry algebra: element has the wrong dimension");
  }
  Vector rhs(dim());
  for (int i = 0; i < dim(); ++i) rhs(i) = inner(basis_[static_cast<std::size_t>(i)].matrix(), x);
  const Vector c = gram_.ldlt().solve(rhs);
  const double residual = (element(c) - x).cwiseAbs().maxCoeff();
  if (residual > 1e-10 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
    throw DomainError("isometry algebra: element is not in the span of the basis");
  }
  return c;
}

bool IsometryAlgebra::contains(const Matrix& x) const {
  try {
    coordinates(x);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

Matrix IsometryAlgebra::element(const Vector& coords) const {
  Matrix out = Matrix::Zero(ambient_dim(), ambient_dim());
  for (int i = 0; i < dim(); ++i) out += coords(i) * basis_[static_cast<std::size_t>(i)].matrix();
  return out;
}

Matrix ad_matrix(const IsometryAlgebra& alg, const LinearKillingField& xi) {
  alg.coordinates(xi.matrix());
  Matrix ad(alg.dim(), alg.dim());
  for (int j = 0; j < alg.dim(); ++j) {
    ad.col(j) = alg.coordinates(bracket(xi, alg.basis()[static_cast<std::size_t>(j)]).matrix());
  }
  return ad;
}

int StandardDecomposition::total_dim() const {
  int total = static_cast<int>(zero_space.size());
  for (const auto& block : pairs) total += static_cast<int>(block.basis.size());
  return total;
}

namespace {

Matrix skew_part(const Matrix& m) { return 0.5 * (m - m.transpose()); }

}  // namespace

StandardDecomposition standard_decomposition(const IsometryAlgebra& alg,
                                             const LinearKillingField& xi) {
  const Matrix ad = ad_matrix(alg, xi);
  // B-orthonormal coordinates y = L^T c with gram = L L^T.
  const Eigen::LLT<Matrix> llt(alg.gram());
  const Matrix lower = llt.matrixL();
  const Matrix upper = lower.transpose();
  const Matrix k_on = upper * ad * upper.triangularView<Eigen::Upper>().solve(
                                       Matrix::Identity(alg.dim(), alg.dim()));
  const Matrix k_skew = skew_part(k_on);
  const Matrix square = k_skew * k_skew;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (square + square.transpose()));
  const Vector mu = eig.eigenvalues();  // ascending, all <= 0
  const Matrix& vecs = eig.eigenvectors();

  const auto to_field = [&](const Vector& y) {
    const Vector c = upper.triangularView<Eigen::Upper>().solve(y);
    return LinearKillingField(skew_part(alg.element(c)));
  };

  // Clusters of consecutive sorted eigenvalues.
  struct Cluster {
    std::vector<Eigen::Index> members;
    double mean = 0.0;
  };
  std::vector<Cluster> clusters;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (!clusters.empty()) {
      const double gap = mu(i) - mu(clusters.back().members.back());
      if (gap <= kClusterTolerance) {
        clusters.back().members.push_back(i);
        continue;
      }
      if (gap < kClusterGap) {
        throw DegeneracyError("standard decomposition: eigenvalues " + std::to_string(mu(i - 1)) +
                              " and " + std::to_string(mu(i)) + " of (ad_xi)^2 are ill-separated");
      }
    }
    clusters.push_back(Cluster{{i}, 0.0});
  }

  StandardDecomposition dec;
  for (auto& cluster : clusters) {
    for (const auto i : cluster.members) cluster.mean += mu(i);
    cluster.mean /= static_cast<double>(cluster.members.size());
    if (std::abs(cluster.mean) <= kClusterTolerance) {
      for (const auto i : cluster.members) dec.zero_space.push_back(to_field(vecs.col(i)));
      continue;
    }
    if (cluster.mean > -kClusterGap) {
      throw DegeneracyError("standard decomposition: eigenvalue " + std::to_string(cluster.mean) +
                            " of (ad_xi)^2 is neither zero nor separated from zero");
    }
    const double lambda = std::sqrt(-cluster.mean);
    Matrix span(k_skew.rows(), static_cast<Eigen::Index>(cluster.members.size()));
    for (std::size_t c = 0; c < cluster.members.size(); ++c) {
      span.col(static_cast<Eigen::Index>(c)) = vecs.col(cluster.members[c]);
    }
    // Pair each vector v with K v / lambda (real and imaginary parts of a
    // complex eigenvector of ad_xi).
    std::vector<Vector> chosen;
    while (chosen.size() < static_cast<std::size_t>(span.cols())) {
      Vector best;
      double best_norm = -1.0;
      for (Eigen::Index c = 0; c < span.cols(); ++c) {
        Vector v = span.col(c);
        for (const auto& w : chosen) v -= v.dot(w) * w;
        if (v.norm() > best_norm) {
          best_norm = v.norm();
          best = v;
        }
      }
      best /= best.norm();
      Vector partner = k_skew * best / lambda;
      for (const auto& w : chosen) partner -= partner.dot(w) * w;
      partner -= partner.dot(best) * best;
      partner /= partner.norm();
      chosen.push_back(best);
      chosen.push_back(partner);
    }
    EigenBlock block;
    block.lambda = lambda;
    for (const auto& y : chosen) block.basis.push_back(to_field(y));
    dec.pairs.push_back(std::move(block));
  }
  std::sort(dec.pairs.begin(), dec.pairs.end(),
            [](const EigenBlock& a, const EigenBlock& b) { return a.lambda < b.lambda; });
  return dec;
}

DecompositionResiduals decomposition_residuals(const IsometryAlgebra& alg,
                                               const LinearKillingField& xi,
                                               const StandardDecomposition& dec) {
  DecompositionResiduals out;
  for (const auto& x : dec.zero_space) {
    out.zero_space = std::max(out.zero_space, bracket(xi, x).matrix().cwiseAbs().maxCoeff());
  }
  for (const auto& block : dec.pairs) {
    for (const auto& x : block.basis) {
      const Matrix r = bracket(xi, bracket(xi, x)).matrix() + block.lambda * block.lambda * x.matrix();
      out.eigen_blocks = std::max(out.eigen_blocks, r.cwiseAbs().maxCoeff());
    }
  }

  // Rebuild ad_xi from the blocks: 0 on g_0, ad restricted to each g_lambda.
  const Matrix ad = ad_matrix(alg, xi);
  Matrix coords(alg.dim(), dec.total_dim());
  Matrix images(alg.dim(), dec.total_dim());
  Eigen::Index col = 0;
  for (const auto& x : dec.zero_space) {
    coords.col(col) = alg.coordinates(x.matrix());
    images.col(col++).setZero();
  }
  for (const auto& block : dec.pairs) {
    for (const auto& x : block.basis) {
      coords.col(col) = alg.coordinates(x.matrix());
      images.col(col++) = alg.coordinates(bracket(xi, x).matrix());
    }
  }
  if (dec.total_dim() == alg.dim()) {
    const Matrix rebuilt = images * coords.inverse();
    out.reconstruction = (rebuilt - ad).cwiseAbs().maxCoeff();
  } else {
    out.reconstruction = std::numeric_limits<double>::infinity();
  }

  for (const auto& x : alg.basis()) {
    const Matrix bx = bracket(xi, x).matrix();
    for (const auto& y : alg.basis()) {
      const double r = IsometryAlgebra::inner(bx, y.matrix()) +
                       IsometryAlgebra::inner(x.matrix(), bracket(xi, y).matrix());
      out.antisymmetry = std::max(out.antisymmetry, std::abs(r));
    }
  }
  return out;
}

PerLemmaFieldResult verify_per_field(const MetricField& g, const LinearKillingField& xi,
                                     const LinearKillingField& a, double lambda,
                                     const SampleSet& samples, const FdOptions& fd,
                                     double tolerance) {
  const LinearKillingField xi_a = bracket(xi, a);
  if (xi_a.matrix().cwiseAbs().maxCoeff() <= kExactTolerance) {
    throw PreconditionError("per lemma: field commutes with xi (lies in g_0)");
  }
  const VectorField xi_field = xi.field("xi");
  PerLemmaFieldResult out;
  out.lambda = lambda;
  for (const auto& sp : samples.points) {
    const Vector& p = sp.coords();
    const Matrix gram = g.gram(p);
    const Vector av = a(p);
    const Vector xv = xi(p);
    out.max_orthogonality = std::max(out.max_orthogonality, std::abs(av.dot(gram * xv)));

    // A -| dxi as a vector: g(w, .) = dxi(A, .) on T_p.
    const Matrix w_form = exterior_derivative_xi(g, xi_field, p, fd);
    const Matrix frame = tangent_frame(p);
    const Matrix gf = frame.transpose() * gram * frame;
    const Vector w = frame * gf.ldlt().solve(frame.transpose() * (w_form.transpose() * av));
    const Vector r = xi_a(p) + w;
    out.max_bracket = std::max(out.max_bracket, std::sqrt(std::abs(r.dot(gram * r))));

    // dxi o dxi via g equals (2 phi)^2.
    const Matrix d = 2.0 * extract_phi(g, xi_field, p, fd);
    const Vector e = d * (d * av) + lambda * lambda * av;
    out.max_eigen = std::max(out.max_eigen, std::sqrt(std::abs(e.dot(gram * e))));
  }
  out.pass = out.max_orthogonality < tolerance && out.max_bracket < tolerance &&
             out.max_eigen < tolerance;
  return out;
}

PerLemmaReport verify_per_lemma(const MetricField& g, const StandardDecomposition& dec,
                                const LinearKillingField& xi, const SampleSet& samples,
                                const FdOptions& fd, double tolerance) {
  PerLemmaReport report;
  report.tolerance = tolerance;
  report.pass = true;
  for (std::size_t b = 0; b < dec.pairs.size(); ++b) {
    const auto& block = dec.pairs[b];
    for (std::size_t i = 0; i < block.basis.size(); ++i) {
      auto r = verify_per_field(g, xi, block.basis[i], block.lambda, samples, fd, tolerance);
      char label[32];
      std::snprintf(label, sizeof label, "g_%.6g[%zu]", block.lambda, i);
      r.name = label;
      report.pass = report.pass && r.pass;
      report.fields.push_back(std::move(r));
    }
  }
  return report;
}

Vector dxi_square_eigenvalues(const MetricField& g, const VectorField& xi, const Vector& p,
                              const FdOptions& fd) {
  const Matrix frame = metric_orthonormal_frame(g, p);
  const Matrix w = frame.transpose() * exterior_derivative_xi(g, xi, p, fd) * frame;
  const Matrix w_skew = 0.5 * (w - w.transpose());
  const Matrix sq = w_skew * w_skew;
  return Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (sq + sq.transpose()), Eigen::EigenvaluesOnly)
      .eigenvalues();
}

PointwiseSpectrum pointwise_dxi_eigenvalues(const MetricField& g, const VectorField& xi,
                                            const SampleSet& samples, const FdOptions& fd) {
  PointwiseSpectrum out;
  for (const auto& sp : samples.points) {
    out.eigenvalues.push_back(dxi_square_eigenvalues(g, xi, sp.coords(), fd));
  }
  if (out.eigenvalues.empty()) return out;
  const Eigen::Index d = out.eigenvalues.front().size();
  Vector lo = out.eigenvalues.front(), hi = out.eigenvalues.front();
  for (const auto& ev : out.eigenvalues) {
    lo = lo.cwiseMin(ev);
    hi = hi.cwiseMax(ev);
  }
  out.spread = hi - lo;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (out.spread(k) >= out.constancy_threshold) continue;
    const double value = 0.5 * (hi(k) + lo(k));
    if (out.constant_values.empty() ||
        std::abs(out.constant_values.back() - value) > out.constancy_threshold) {
      out.constant_values.push_back(value);
    }
  }
  return out;
}

CentralizerReport centralizer_check(const IsometryAlgebra& alg,
                                    std::span<const LinearKillingField> lambda) {
  CentralizerReport out;
  for (const auto& y : lambda) {
    alg.coordinates(y.matrix());
    for (const auto& x : alg.basis()) {
      out.max_residual = std::max(out.max_residual, bracket(y, x).matrix().cwiseAbs().maxCoeff());
    }
  }
  out.central = out.max_residual <= kExactTolerance;
  return out;
}

}  // namespace sasaki
