#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the library's differential-geometry code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using AmbientField = std::function<Vector(const Vector&)>;

/// Jacobian of an ambient field by central differences.
inline Matrix jacobian(const AmbientField& f, const Vector& p, double h = 1e-5) {
  const Eigen::Index n = p.size();
  Matrix j(f(p).size(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e(i) = h;
    j.col(i) = (f(p + e) - f(p - e)) / (2.0 * h);
  }
  return j;
}

/// [X, Y](p) = DY(p) X(p) - DX(p) Y(p) for ambient extensions.
inline Vector field_bracket(const AmbientField& x, const AmbientField& y, const Vector& p) {
  return jacobian(y, p) * x(p) - jacobian(x, p) * y(p);
}

/// Inverse stereographic projection from +e_1 and the chordal distance of
/// two chart points.
inline Vector stereo_inverse(const Vector& u) {
  const double r2 = u.squaredNorm();
  Vector p(u.size() + 1);
  p(0) = (r2 - 1.0) / (r2 + 1.0);
  p.tail(u.size()) = 2.0 * u / (r2 + 1.0);
  return p;
}

inline double chordal_distance(const Vector& u, const Vector& v) {
  return 2.0 * (u - v).norm() / std::sqrt((1.0 + u.squaredNorm()) * (1.0 + v.squaredNorm()));
}

/// Coordinates of a matrix in a list of matrices, by least squares on vec().
inline Vector coordinates(const std::vector<Matrix>& basis, const Matrix& x) {
  Matrix a(x.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    a.col(static_cast<Eigen::Index>(k)) = basis[k].reshaped();
  }
  return a.colPivHouseholderQr().solve(x.reshaped().eval());
}

struct Spectrum {
  int zero_dim = 0;
  std::map<long, int> blocks;  // round(1e6 * lambda) -> real dimension
};

/// Brute-force spectrum of ad_xi: complex eigenvalues of the ad matrix in the
/// given basis, eigenvalue +-i lambda contributing one real dimension each.
inline Spectrum ad_spectrum(const std::vector<Matrix>& basis, const Matrix& xi) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  Matrix ad(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Matrix& x = basis[static_cast<std::size_t>(k)];
    ad.col(k) = coordinates(basis, x * xi - xi * x);
  }
  Eigen::EigenSolver<Matrix> es(ad, false);
  Spectrum s;
  for (Eigen::Index i = 0; i < d; ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    if (std::abs(ev) < 1e-8) {
      ++s.zero_dim;
    } else {
      ++s.blocks[std::lround(1e6 * std::abs(ev.imag()))];
    }
  }
  return s;
}

/// Defect of the isometry condition Phi^T G(Phi p) Phi = G(p) on T_p for
/// Phi = exp(tA), measured on an orthonormal basis of T_p.
template <class GramFn>
double pullback_defect(const GramFn& gram, const Matrix& a, const Vector& p, double t) {
  const Matrix phi = (t * a).exp();
  const Eigen::Index n = p.size();
  Matrix proj = Matrix::Identity(n, n) - p * p.transpose();
  Eigen::JacobiSVD<Matrix> svd(proj, Eigen::ComputeThinU);
  const Matrix frame = svd.matrixU().leftCols(n - 1);
  const Matrix lhs = frame.transpose() * phi.transpose() * gram(Vector(phi * p)) * phi * frame;
  const Matrix rhs = frame.transpose() * gram(p) * frame;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

/// |exp(tA) p - p|.
inline double orbit_gap(const Matrix& a, const Vector& p, double t) {
  return ((t * a).exp() * p - p).norm();
}

/// Horizontal lift for the Hopf map by least squares: u* orthogonal to p and
/// J0 p with d pi(p) u* = w.
inline Vector hopf_lift(const Matrix& dpi, const Vector& p, const Matrix& j0, const Vector& w) {
  Matrix a(5, 4);
  a.topRows(3) = dpi;
  a.row(3) = p.transpose();
  a.row(4) = (j0 * p).transpose();
  Vector rhs = Vector::Zero(5);
  rhs.head(3) = w;
  return a.colPivHouseholderQr().solve(rhs);
}

inline Vector random_unit(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = nd(rng);
  return v.normalized();
}

inline Matrix random_skew(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = nd(rng);
  }
  return m - m.transpose();
}

}  // namespace oracle
