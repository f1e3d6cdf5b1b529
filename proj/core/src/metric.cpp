#include "sasaki/metric.hpp"

#include "chart_patch.hpp"

namespace sasaki {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kRound: return "round";
    case MetricKind::kGFDeformation: return "gF-deformation";
    case MetricKind::kIrregularSasakian: return "irregular-sasakian";
    case MetricKind::kSignFlipped: return "sign-flipped";
    case MetricKind::kCustom: return "custom";
  }
  return "unknown";
}

MetricField::MetricField(MetricKind kind, GramFn gram, bool exact_derivatives)
    : kind_(kind), gram_(std::make_shared<const GramFn>(std::move(gram))), exact_(exact_derivatives) {}

MetricField MetricField::round() {
  return MetricField(
      MetricKind::kRound, [](const Vector& p) { return Matrix::Identity(p.size(), p.size()); }, true);
}

double MetricField::inner(const Vector& p, const Vector& u, const Vector& v) const {
  return u.dot(gram(p) * v);
}

double MetricField::operator()(const TangentVector& u, const TangentVector& v) const {
  return inner(u.base.coords(), u.vec, v.vec);
}

VectorField VectorField::linear(Matrix a, std::string label) {
  if (a.rows() != a.cols()) throw DomainError("linear field: matrix must be square");
  VectorField f;
  f.matrix_ = a;
  f.fn_ = std::make_shared<const Fn>([a = std::move(a)](const Vector& p) -> Vector {
    Vector v = a * p;
    v -= v.dot(p) * p;
    return v;
  });
  f.label_ = std::move(label);
  return f;
}

VectorField VectorField::custom(Fn fn, std::string label) {
  VectorField f;
  f.fn_ = std::make_shared<const Fn>(std::move(fn));
  f.label_ = std::move(label);
  return f;
}

Vector VectorField::operator()(const Vector& p) const {
  if (matrix_ && matrix_->cols() != p.size()) {
    throw DomainError("linear field of size " + std::to_string(matrix_->cols()) +
                      " evaluated at a point of dimension " + std::to_string(p.size()));
  }
  return (*fn_)(p);
}

bool VectorField::is_skew_linear() const {
  return matrix_ && (*matrix_ + matrix_->transpose()).cwiseAbs().maxCoeff() == 0.0;
}

VectorField VectorField::operator-() const {
  if (matrix_) return linear(-*matrix_, label_.empty() ? std::string{} : "-" + label_);
  auto fn = fn_;
  return custom([fn](const Vector& p) -> Vector { return -(*fn)(p); },
                label_.empty() ? std::string{} : "-" + label_);
}

namespace {

bool round_fast_path(const MetricField& g, const VectorField& x) {
  return g.kind() == MetricKind::kRound && g.exact_derivatives() && x.matrix().has_value();
}

Matrix gram_in_frame(const MetricField& g, const Vector& p, const Matrix& frame) {
  return frame.transpose() * g.gram(p) * frame;
}

}  // namespace

double min_gram_eigenvalue(const MetricField& g, const Vector& p) {
  const Matrix gf = gram_in_frame(g, p, tangent_frame(p));
  return Eigen::SelfAdjointEigenSolver<Matrix>(gf, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

Matrix metric_orthonormal_frame(const MetricField& g, const Vector& p) {
  const Matrix frame = tangent_frame(p);
  const Matrix gf = gram_in_frame(g, p, frame);
  const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(gf, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (!(lo > kPositivityMargin)) {
    throw MetricDegeneracyError("metric is not positive definite at a sample (min eigenvalue " +
                                std::to_string(lo) + ")");
  }
  const Eigen::LLT<Matrix> llt(gf);
  // frame * L^{-T}
  const Matrix lower = llt.matrixL();
  return lower.triangularView<Eigen::Lower>().solve(frame.transpose()).transpose();
}

Matrix covariant_derivative_matrix_fd(const MetricField& g, const VectorField& x, const Vector& p,
                                      const FdOptions& fd) {
  const detail::ChartPatch patch(g, p);
  const Vector& u0 = patch.origin();
  const Matrix m = detail::richardson([&](double h) { return patch.nabla(x, u0, h); }, fd,
                                      "covariant derivative");
  return patch.frame(u0) * m * patch.to_components(u0);
}

Matrix covariant_derivative_matrix(const MetricField& g, const VectorField& x, const Vector& p,
                                   const FdOptions& fd) {
  if (round_fast_path(g, x)) {
    const Matrix& a = *x.matrix();
    const Matrix proj = tangent_projector(p);
    return proj * a * proj - p.dot(a * p) * proj;
  }
  return covariant_derivative_matrix_fd(g, x, p, fd);
}

TangentVector covariant_derivative(const MetricField& g, const VectorField& x,
                                   const TangentVector& v, const FdOptions& fd) {
  const Vector& p = v.base.coords();
  return TangentVector{v.base, covariant_derivative_matrix(g, x, p, fd) * v.vec};
}

SecondDerivative second_covariant_derivative_fd(const MetricField& g, const VectorField& x,
                                                const Vector& p, const FdOptions& fd) {
  const detail::ChartPatch patch(g, p);
  const Vector& u0 = patch.origin();
  const Matrix h = detail::richardson([&](double step) { return patch.hessian(x, u0, step, fd); },
                                      fd, "second covariant derivative");
  const Matrix frame = patch.frame(u0);
  const Matrix coords = patch.to_components(u0);
  const Eigen::Index d = patch.dim();
  return SecondDerivative([h, frame, coords, d](const Vector& u, const Vector& v) -> Vector {
    const Vector uc = coords * u;
    const Vector vc = coords * v;
    Vector out = Vector::Zero(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) out += h.col(i * d + j) * (uc(i) * vc(j));
    }
    return frame * out;
  });
}

SecondDerivative second_covariant_derivative(const MetricField& g, const VectorField& x,
                                             const Vector& p, const FdOptions& fd) {
  if (round_fast_path(g, x) && x.is_skew_linear()) {
    const Vector xp = x(p);
    return SecondDerivative([xp](const Vector& u, const Vector& v) -> Vector {
      return xp.dot(v) * u - u.dot(v) * xp;
    });
  }
  return second_covariant_derivative_fd(g, x, p, fd);
}

Matrix exterior_derivative_xi(const MetricField& g, const VectorField& xi, const Vector& p,
                              const FdOptions& fd) {
  const Matrix b = covariant_derivative_matrix(g, xi, p, fd);
  const Matrix gram = g.gram(p);
  const Matrix proj = tangent_projector(p);
  return proj * (b.transpose() * gram - gram * b) * proj;
}

Matrix extract_phi(const MetricField& g, const VectorField& xi, const Vector& p,
                   const FdOptions& fd) {
  const Matrix frame = tangent_frame(p);
  const Matrix gf = gram_in_frame(g, p, frame);
  const Eigen::LDLT<Matrix> ldlt(gf);
  const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(gf, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (ldlt.info() != Eigen::Success || !(std::abs(lo) > kPositivityMargin)) {
    throw MetricDegeneracyError("extract_phi: singular Gram matrix");
  }
  const Matrix wf = frame.transpose() * exterior_derivative_xi(g, xi, p, fd) * frame;
  const Matrix phi_f = -0.5 * ldlt.solve(wf);
  return frame * phi_f * frame.transpose();
}

Matrix lie_derivative_form(const MetricField& g, const VectorField& x, const Vector& p,
                           const FdOptions& fd) {
  const Matrix b = covariant_derivative_matrix(g, x, p, fd);
  const Matrix gram = g.gram(p);
  const Matrix proj = tangent_projector(p);
  return proj * (b.transpose() * gram + gram * b) * proj;
}

double lie_derivative_metric(const MetricField& g, const VectorField& x, const Vector& p,
                             const Vector& u, const Vector& v, const FdOptions& fd) {
  return u.dot(lie_derivative_form(g, x, p, fd) * v);
}

StructureTensors::StructureTensors(MetricField g, VectorField xi, FdOptions fd)
    : g_(std::move(g)), xi_(std::move(xi)), fd_(fd) {}

Vector StructureTensors::eta(const Vector& p) const { return g_.gram(p) * xi_(p); }
Matrix StructureTensors::dxi(const Vector& p) const { return exterior_derivative_xi(g_, xi_, p, fd_); }
Matrix StructureTensors::phi(const Vector& p) const { return extract_phi(g_, xi_, p, fd_); }

}  // namespace sasaki
