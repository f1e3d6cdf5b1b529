#include <gtest/gtest.h>

#include <random>

#include <sasaki/sphere.hpp>

#include "oracles.hpp"

using namespace sasaki;

TEST(SpherePoint, RejectsNonUnitAndOddDimensions) {
  EXPECT_THROW(SpherePoint(Vector::Constant(4, 1.0)), DomainError);
  EXPECT_THROW(SpherePoint(Vector::Unit(3, 0)), DomainError);
  EXPECT_THROW(SpherePoint(Vector::Unit(2, 0)), DomainError);
  EXPECT_NO_THROW(SpherePoint(Vector::Unit(4, 2)));
  EXPECT_THROW(SpherePoint::normalized(Vector::Zero(4)), DomainError);
  EXPECT_EQ(SpherePoint::normalized(Vector::Constant(6, 3.0)).n(), 2);
}

TEST(Tangent, ProjectorAndFrame) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector p = oracle::random_unit(rng, 8);
    const Matrix proj = tangent_projector(p);
    EXPECT_LT((proj * proj - proj).norm(), 1e-14);
    EXPECT_LT((proj * p).norm(), 1e-14);
    const Matrix f = tangent_frame(p);
    ASSERT_EQ(f.cols(), 7);
    EXPECT_LT((f.transpose() * f - Matrix::Identity(7, 7)).norm(), 1e-12);
    EXPECT_LT((f.transpose() * p).norm(), 1e-12);
  }
}

TEST(Tangent, ProjectTangentRemovesNormalPart) {
  const SpherePoint p(Vector::Unit(4, 1));
  const TangentVector t = project_tangent(p, Vector{{1.0, 2.0, 3.0, 4.0}});
  EXPECT_DOUBLE_EQ(t.vec(1), 0.0);
  EXPECT_DOUBLE_EQ(t.vec(3), 4.0);
}

TEST(Chart, RoundTripAndPoleExclusion) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector p = oracle::random_unit(rng, 6);
    const Chart c = chart_for(p);
    const Vector u = c.coords(p);
    EXPECT_LT((c.inverse(u) - p).norm(), 1e-12);
    EXPECT_NEAR(c.inverse(u).norm(), 1.0, 1e-14);
  }
  Chart north;
  EXPECT_THROW(north.coords(Vector::Unit(4, 0)), DomainError);
  EXPECT_NO_THROW(north.coords(-Vector::Unit(4, 0)));
}

TEST(Chart, StereographicDistanceMatchesChordalFormula) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  Chart north;
  for (int trial = 0; trial < 50; ++trial) {
    Vector u(5), v(5);
    for (int i = 0; i < 5; ++i) {
      u(i) = nd(rng);
      v(i) = nd(rng);
    }
    EXPECT_NEAR((north.inverse(u) - north.inverse(v)).norm(), oracle::chordal_distance(u, v),
                1e-13);
    EXPECT_LT((north.inverse(u) - oracle::stereo_inverse(u)).norm(), 1e-14);
  }
}

TEST(Chart, InverseJacobianMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  for (int sign : {1, -1}) {
    Chart c;
    c.pole_sign = sign;
    const Vector u = oracle::random_unit(rng, 5) * 0.7;
    const Matrix fd = oracle::jacobian([&](const Vector& x) { return c.inverse(x); }, u);
    EXPECT_LT((c.inverse_jacobian(u) - fd).cwiseAbs().maxCoeff(), 1e-8);
    // Columns are tangent at the image.
    EXPECT_LT((c.inverse_jacobian(u).transpose() * c.inverse(u)).norm(), 1e-12);
  }
}

TEST(Sampling, DeterministicAndAwayFromPoles) {
  const SampleSet a = sample_sphere(2, 300, 42);
  const SampleSet b = sample_sphere(2, 300, 42);
  const SampleSet c = sample_sphere(2, 300, 43);
  ASSERT_EQ(a.points.size(), 300u);
  EXPECT_EQ(a.seed, 42u);
  EXPECT_EQ(a.n, 2);
  bool differs = false;
  Vector mean = Vector::Zero(6);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_TRUE(a.points[i].coords() == b.points[i].coords());
    differs = differs || !(a.points[i].coords() == c.points[i].coords());
    const Vector& x = a.points[i].coords();
    EXPECT_GE(std::min((x - Vector::Unit(6, 0)).norm(), (x + Vector::Unit(6, 0)).norm()),
              kPoleExclusion);
    mean += a.points[i].coords();
  }
  EXPECT_TRUE(differs);
  EXPECT_LT((mean / 300.0).norm(), 0.15);
  EXPECT_THROW(sample_sphere(0, 10, 1), DomainError);
  EXPECT_THROW(sample_sphere(1, 0, 1), DomainError);
}
