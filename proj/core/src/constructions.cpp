#include "sasaki/constructions.hpp"

#include <cmath>

namespace sasaki {

Matrix complex_structure(int ambient_dim) {
  Matrix j = Matrix::Zero(ambient_dim, ambient_dim);
  for (int k = 0; 2 * k + 1 < ambient_dim; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  return j;
}

Matrix first_coordinate_rotation(int ambient_dim) {
  Matrix j = Matrix::Zero(ambient_dim, ambient_dim);
  j(1, 0) = 1.0;
  j(0, 1) = -1.0;
  return j;
}

std::array<Matrix, 3> quaternionic_structures(int m) {
  if (m < 0) throw DomainError("quaternionic structures: m must be non-negative");
  const int dim = 4 * m + 4;
  // Right multiplication on a + bi + cj + dk:
  //   x i = (-b, a, d, -c), x j = (-c, -d, a, b), x k = (-d, c, -b, a).
  Eigen::Matrix4d ri, rj, rk;
  ri << 0, -1, 0, 0,
        1, 0, 0, 0,
        0, 0, 0, 1,
        0, 0, -1, 0;
  rj << 0, 0, -1, 0,
        0, 0, 0, -1,
        1, 0, 0, 0,
        0, 1, 0, 0;
  rk << 0, 0, 0, -1,
        0, 0, 1, 0,
        0, -1, 0, 0,
        1, 0, 0, 0;
  std::array<Matrix, 3> out{Matrix::Zero(dim, dim), Matrix::Zero(dim, dim), Matrix::Zero(dim, dim)};
  for (int b = 0; b <= m; ++b) {
    out[0].block<4, 4>(4 * b, 4 * b) = ri;
    out[1].block<4, 4>(4 * b, 4 * b) = rj;
    out[2].block<4, 4>(4 * b, 4 * b) = rk;
  }
  return out;
}

Matrix plane_generator(int ambient_dim, int a, int b) {
  Matrix e = Matrix::Zero(ambient_dim, ambient_dim);
  e(a, b) = 1.0;
  e(b, a) = -1.0;
  return e;
}

std::vector<LinearKillingField> rotations_of_first(int ambient_dim, int block) {
  std::vector<LinearKillingField> out;
  for (int a = 0; a < block; ++a) {
    for (int b = a + 1; b < block; ++b) out.emplace_back(plane_generator(ambient_dim, a, b));
  }
  return out;
}

std::vector<LinearKillingField> unitary_tail(int ambient_dim) {
  const int n = ambient_dim / 2 - 1;
  // Complex entry (k, l) = x + iy becomes the real block [[x, -y], [y, x]].
  const auto put = [](Matrix& m, int k, int l, double x, double y) {
    m(2 * k, 2 * l) += x;
    m(2 * k, 2 * l + 1) += -y;
    m(2 * k + 1, 2 * l) += y;
    m(2 * k + 1, 2 * l + 1) += x;
  };
  std::vector<LinearKillingField> out;
  for (int k = 1; k <= n; ++k) {
    Matrix m = Matrix::Zero(ambient_dim, ambient_dim);
    put(m, k, k, 0.0, 1.0);
    out.emplace_back(std::move(m));
  }
  for (int k = 1; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      Matrix re = Matrix::Zero(ambient_dim, ambient_dim);
      put(re, k, l, 1.0, 0.0);
      put(re, l, k, -1.0, 0.0);
      out.emplace_back(std::move(re));
      Matrix im = Matrix::Zero(ambient_dim, ambient_dim);
      put(im, k, l, 0.0, 1.0);
      put(im, l, k, 0.0, 1.0);
      out.emplace_back(std::move(im));
    }
  }
  return out;
}

SasakianExample build_round_sasakian(int n) {
  if (n < 1) throw DomainError("round Sasakian sphere: n must be at least 1");
  return {MetricField::round(), VectorField::linear(complex_structure(2 * n + 2), "J0")};
}

QuaternionicExample build_quaternionic_frame(int m) {
  auto mats = quaternionic_structures(m);
  return {MetricField::round(),
          {VectorField::linear(mats[0], "I1"), VectorField::linear(mats[1], "I2"),
           VectorField::linear(mats[2], "I3")},
          mats};
}

double smooth_step(double s) {
  const auto psi = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double t = (s - kStepStart) / (kStepEnd - kStepStart);
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return psi(t) / (psi(t) + psi(1.0 - t));
}

namespace {

/// X restricted to V2: x2 j minus its component along i x2.
Vector deformation_x(const Vector& p) {
  const Eigen::Index off = p.size() - 4;
  const Eigen::Vector4d q = p.tail<4>();
  const Eigen::Vector4d xj(-q(2), -q(3), q(0), q(1));
  const Eigen::Vector4d ix(-q(1), q(0), -q(3), q(2));
  const double r2 = q.squaredNorm();
  Vector out = Vector::Zero(p.size());
  if (r2 < 1e-300) return out;
  out.segment<4>(off) = xj - (xj.dot(ix) / r2) * ix;
  return out;
}

}  // namespace

DeformedExample build_gF(int n, double c) {
  if (n < 3) throw DomainError("g_F deformation needs n >= 3");
  if (!(c >= 0.0)) throw DomainError("g_F deformation needs a non-negative amplitude");
  if (std::exp(-2.0 * c) < kPositivityMargin) {
    throw MetricDegeneracyError("g_F deformation: amplitude " + std::to_string(c) +
                                " violates the positivity margin");
  }
  const int dim = 2 * n + 2;
  const Matrix j0 = complex_structure(dim);

  const auto F = [c](const Vector& p) { return c * smooth_step(deformation_x(p).squaredNorm()); };
  const VectorField x = VectorField::custom(deformation_x, "X");
  const VectorField jx =
      VectorField::custom([j0](const Vector& p) -> Vector { return j0 * deformation_x(p); }, "JX");

  // Unit directions of X and JX where F is nonzero.
  const auto frame_pair = [j0](const Vector& p) {
    const Vector xv = deformation_x(p);
    const Vector xh = xv / xv.norm();
    return std::pair<Vector, Vector>(xh, j0 * xh);
  };
  const auto gram = [dim, F, frame_pair](const Vector& p) -> Matrix {
    Matrix m = Matrix::Identity(dim, dim);
    const double f = F(p);
    if (f == 0.0) return m;
    const auto [xh, yh] = frame_pair(p);
    m += (std::exp(-2.0 * f) - 1.0) * xh * xh.transpose() + (std::exp(2.0 * f) - 1.0) * yh * yh.transpose();
    return m;
  };
  const auto endo = [dim, F, frame_pair](const Vector& p) -> Matrix {
    Matrix a = Matrix::Identity(dim, dim);
    const double f = F(p);
    if (f == 0.0) return a;
    const auto [xh, yh] = frame_pair(p);
    a += (std::exp(f) - 1.0) * xh * xh.transpose() + (std::exp(-f) - 1.0) * yh * yh.transpose();
    return a;
  };

  DeformedExample out{
      MetricField(c == 0.0 ? MetricKind::kRound : MetricKind::kGFDeformation, gram, false),
      VectorField::linear(j0, "J0"),
      DeformationData{c, F, x, jx, endo, {}},
      rotations_of_first(dim, 2 * n - 2)};
  out.data.convention = "gF(u,v) = g0(A^-1 u, A^-1 v)";
  if (c == 0.0) out.metric = MetricField::round();
  out.invariance.emplace_back(j0);
  return out;
}

IrregularExample build_irregular(int n, const ExactReal& a) {
  if (n < 1) throw DomainError("irregular metric: n must be at least 1");
  const double av = a.value();
  if (!(av >= 0.0 && av < 1.0)) throw DomainError("irregular metric: a must lie in [0, 1)");
  const int dim = 2 * n + 2;
  IrregularMetricData data;
  data.a = a;
  data.a_value = av;
  data.T0 = complex_structure(dim);
  data.T1 = first_coordinate_rotation(dim);
  data.T = data.T0 + av * data.T1;
  const Matrix t0 = data.T0;
  const Matrix t = data.T;
  data.alpha = [t0, t](const Vector& p) { return 1.0 / (t * p).dot(t0 * p); };

  const auto gram = [t0, t, dim](const Vector& p) -> Matrix {
    const Vector tv = t * p;
    const Vector t0v = t0 * p;
    const double s = tv.dot(t0v);
    const Vector cvec = t0v / s;  // u_T = c . U
    const Matrix r = Matrix::Identity(dim, dim) - tv * cvec.transpose();
    return cvec * cvec.transpose() + (1.0 / s) * r.transpose() * r;
  };

  IrregularExample out{MetricField(MetricKind::kIrregularSasakian, gram, false),
                       VectorField::linear(data.T, "T"), data, unitary_tail(dim)};
  out.invariance.insert(out.invariance.begin(), LinearKillingField(data.T1));
  return out;
}

}  // namespace sasaki
