#include "chart_patch.hpp"

namespace sasaki::detail {

ChartPatch::ChartPatch(const MetricField& g, const Vector& p)
    : g_(g), chart_(chart_for(p)), u0_(chart_.coords(p)) {}

Matrix ChartPatch::frame(const Vector& u) const { return chart_.inverse_jacobian(u); }

Matrix ChartPatch::metric(const Vector& u) const {
  const Matrix jac = frame(u);
  const Matrix gram = g_.gram(chart_.inverse(u));
  return jac.transpose() * gram * jac;
}

Matrix ChartPatch::to_components(const Vector& u) const {
  const Matrix jac = frame(u);
  const Matrix jtj = jac.transpose() * jac;
  return jtj.ldlt().solve(jac.transpose());
}

Vector ChartPatch::components(const VectorField& x, const Vector& u) const {
  return to_components(u) * x(chart_.inverse(u));
}

Matrix ChartPatch::christoffel(const Vector& u, double h) const {
  const Eigen::Index d = dim();
  std::vector<Matrix> dg(static_cast<std::size_t>(d));
  for (Eigen::Index l = 0; l < d; ++l) {
    Vector up = u, um = u;
    up(l) += h;
    um(l) -= h;
    dg[static_cast<std::size_t>(l)] = (metric(up) - metric(um)) / (2.0 * h);
  }
  const Matrix ginv = metric(u).ldlt().solve(Matrix::Identity(d, d));

  // First kind: Gamma_{m,ij} = 1/2 (d_i g_jm + d_j g_im - d_m g_ij).
  Matrix first(d, d * d);
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        first(m, i * d + j) = 0.5 * (dg[static_cast<std::size_t>(i)](j, m) +
                                     dg[static_cast<std::size_t>(j)](i, m) -
                                     dg[static_cast<std::size_t>(m)](i, j));
      }
    }
  }
  return ginv * first;
}

Matrix ChartPatch::nabla(const VectorField& x, const Vector& u, double h) const {
  const Eigen::Index d = dim();
  const Matrix gamma = christoffel(u, h);
  const Vector xc = components(x, u);
  Matrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Vector up = u, um = u;
    up(j) += h;
    um(j) -= h;
    m.col(j) = (components(x, up) - components(x, um)) / (2.0 * h);
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index l = 0; l < d; ++l) m.col(j) += gamma.col(j * d + l) * xc(l);
  }
  return m;
}

Matrix ChartPatch::hessian(const VectorField& x, const Vector& u, double h,
                           const FdOptions& inner) const {
  const Eigen::Index d = dim();
  const auto nabla_at = [&](const Vector& at) {
    return richardson([&](double step) { return nabla(x, at, step); }, inner, "covariant derivative");
  };
  const Matrix gamma =
      richardson([&](double step) { return christoffel(u, step); }, inner, "christoffel symbols");
  const Matrix m0 = nabla_at(u);

  Matrix out(d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Vector up = u, um = u;
    up(i) += h;
    um(i) -= h;
    const Matrix dm = (nabla_at(up) - nabla_at(um)) / (2.0 * h);
    for (Eigen::Index j = 0; j < d; ++j) {
      Vector col = dm.col(j);
      for (Eigen::Index l = 0; l < d; ++l) {
        col += gamma.col(i * d + l) * m0(l, j);
        col -= gamma(l, i * d + j) * m0.col(l);
      }
      out.col(i * d + j) = col;
    }
  }
  return out;
}

}  // namespace sasaki::detail
