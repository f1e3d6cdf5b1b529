#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include <sasaki/constructions.hpp>
#include <sasaki/verify.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace sasaki;

TEST(ResidualAccumulator, MaxMeanAndNan) {
  VerificationReport r;
  r.tolerance = 1.0;
  ResidualAccumulator acc;
  acc.add(0.5);
  acc.add(0.25);
  acc.finish(r);
  EXPECT_DOUBLE_EQ(r.max_residual, 0.5);
  EXPECT_DOUBLE_EQ(r.mean_residual, 0.375);
  EXPECT_TRUE(r.pass);
  ResidualAccumulator bad;
  bad.add(std::numeric_limits<double>::quiet_NaN());
  VerificationReport q;
  q.tolerance = 1.0;
  bad.finish(q);
  EXPECT_FALSE(q.pass);
}

TEST(CheckKilling, SkewPassesSymmetricFails) {
  std::mt19937_64 rng(31);
  const auto s = sample_sphere(2, 20, 1);
  const auto skew = check_killing(MetricField::round(), VectorField::linear(oracle::random_skew(rng, 6)), s);
  EXPECT_TRUE(skew.pass);
  EXPECT_DOUBLE_EQ(skew.tolerance, kExactTolerance);
  Matrix sym = Matrix::Zero(6, 6);
  sym(0, 0) = 1.0;
  const auto bad = check_killing(MetricField::round(), VectorField::linear(sym), s);
  EXPECT_FALSE(bad.pass);
  EXPECT_GT(bad.max_residual, kFailFloor);
}

TEST(CheckKilling, DimensionMismatchIsADomainError) {
  const auto s = sample_sphere(2, 3, 1);
  EXPECT_THROW(check_killing(MetricField::round(), VectorField::linear(complex_structure(4)), s),
               DomainError);
  const auto irr = build_irregular(1, ExactReal(0));
  EXPECT_THROW(check_sasakian(irr.metric, irr.xi, s), DomainError);
}

TEST(CheckKilling, ZeroFieldIsDegenerate) {
  const auto r = check_killing(MetricField::round(), VectorField::linear(Matrix::Zero(4, 4)),
                               sample_sphere(1, 5, 1));
  EXPECT_TRUE(r.degenerate);
  EXPECT_FALSE(r.pass);
}

TEST(CheckUnitLength, ScaledFieldFails) {
  const auto s = sample_sphere(1, 10, 2);
  EXPECT_TRUE(check_unit_length(MetricField::round(), VectorField::linear(complex_structure(4)), s).pass);
  const auto r =
      check_unit_length(MetricField::round(), VectorField::linear(2.0 * complex_structure(4)), s);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.max_residual, 3.0, 1e-12);
}

TEST(Calibration, StandardStructureFixesSign) {
  EXPECT_EQ(sasakian_calibration(), -1.0);
  EXPECT_NEAR(sasakian_calibration_fit(), -1.0, 1e-6);
}

class RoundSasakian : public ::testing::TestWithParam<int> {};

TEST_P(RoundSasakian, AllStructureChecksPass) {
  const int n = GetParam();
  const auto ex = build_round_sasakian(n);
  const auto s = sample_sphere(n, 25, 9);
  EXPECT_TRUE(check_sasakian(ex.metric, ex.xi, s).pass);
  EXPECT_TRUE(check_kcontact(ex.metric, ex.xi, s).pass);
  EXPECT_TRUE(nijenhuis_residual(ex.metric, ex.xi, s).pass);
}

INSTANTIATE_TEST_SUITE_P(Dimensions, RoundSasakian, ::testing::Values(1, 2, 3));

TEST(CheckSasakian, PreconditionsAreReportedAsDegenerate) {
  const auto s = sample_sphere(1, 10, 3);
  const auto scaled = check_sasakian(MetricField::round(), VectorField::linear(2.0 * complex_structure(4)), s);
  EXPECT_TRUE(scaled.degenerate);
  EXPECT_FALSE(scaled.pass);
  EXPECT_FALSE(scaled.child("unit-length").pass);
}

TEST(CheckKContact, UnequalRatesAreNotKContact) {
  // A unit Killing field only on part of the sphere has phi^2 != -1 + eta xi.
  Matrix a = Matrix::Zero(4, 4);
  a(1, 0) = 1.0;
  a(0, 1) = -1.0;
  a(3, 2) = 3.0;
  a(2, 3) = -3.0;
  const auto r = check_kcontact(MetricField::round(), VectorField::linear(a), sample_sphere(1, 10, 4));
  EXPECT_FALSE(r.pass);
}

TEST(ThreeSasakian, QuaternionicFrames) {
  for (int m : {0, 1}) {
    const auto q = build_quaternionic_frame(m);
    const auto s = sample_sphere(2 * m + 1, 15, 6);
    const auto r = check_3sasakian(q.metric, q.xi[0], q.xi[1], q.xi[2], s);
    EXPECT_TRUE(r.child("orthonormality").pass);
    EXPECT_TRUE(r.child("sasakian-1").pass);
    EXPECT_TRUE(r.child("sasakian-2").pass);
    EXPECT_TRUE(r.child("sasakian-3").pass);
    EXPECT_TRUE(r.child("relations-minus-nabla").pass);
    // The phi = +nabla xi reading fails on v = xi_i for every orthonormal triple.
    EXPECT_FALSE(r.child("relations-plus-nabla").pass);
    EXPECT_NEAR(r.child("relations-plus-nabla").max_residual, 1.0, 1e-8);
    EXPECT_EQ(r.metadata["holding_variants"], nlohmann::json::array({"relations-minus-nabla"}));
    EXPECT_TRUE(check_ac_identities(q.metric, q.xi[0], q.xi[1], q.xi[2], s).pass);
  }
}

TEST(ThreeSasakian, WrongOrientationFails) {
  const auto q = build_quaternionic_frame(0);
  const auto s = sample_sphere(1, 10, 6);
  const auto r = check_3sasakian(q.metric, q.xi[0], q.xi[1], -q.xi[2], s);
  EXPECT_FALSE(r.child("relations-minus-nabla").pass);
}

TEST(FrLemma, ReconstructsThirdField) {
  const auto q = build_quaternionic_frame(1);
  const auto fr = check_fr_lemma(q.metric, q.xi[0], q.xi[1], sample_sphere(3, 15, 8));
  ASSERT_TRUE(fr.xi3_matrix.has_value());
  const double plus = (*fr.xi3_matrix - q.matrices[2]).cwiseAbs().maxCoeff();
  const double minus = (*fr.xi3_matrix + q.matrices[2]).cwiseAbs().maxCoeff();
  EXPECT_LT(std::min(plus, minus), 1e-6);
  EXPECT_TRUE(fr.report.child("linear-fit").pass);
  EXPECT_TRUE(fr.report.child("3-sasakian").pass);
}

TEST(FrLemma, RejectsNonOrthogonalPairs) {
  const auto q = build_quaternionic_frame(0);
  EXPECT_THROW(check_fr_lemma(q.metric, q.xi[0], q.xi[0], sample_sphere(1, 5, 1)),
               PreconditionError);
}

TEST(SplitD, QuaternionicFrameHasNoAntiQuaternionicPart) {
  for (int m : {0, 1}) {
    const auto q = build_quaternionic_frame(m);
    const auto split = split_D(q.metric, q.xi[0], q.xi[1], q.xi[2], sample_sphere(2 * m + 1, 10, 2));
    EXPECT_TRUE(split.constant_dims);
    EXPECT_EQ(split.dim_plus, 0);
    EXPECT_EQ(split.dim_minus, 4 * m);
    EXPECT_LT(split.max_square_residual, 1e-10);
    // D+ = {0}: the flip leaves the metric alone.
    const MetricField h = sign_flip_metric(q.metric, split);
    EXPECT_EQ(h.kind(), MetricKind::kRound);
  }
}

TEST(SplitD, SyntheticFixtureSplitsTwoTwo) {
  const auto f = fixture::split_fixture();
  const auto split = split_D(f.metric, f.xi[0], f.xi[1], f.xi[2], f.samples);
  ASSERT_TRUE(split.constant_dims);
  EXPECT_EQ(split.dim_plus, 8);
  EXPECT_EQ(split.dim_minus, 8);
  EXPECT_LT(split.max_projector_residual, 1e-10);
  for (const auto& ps : split.points) {
    // D+ is the middle block, D- the last.
    EXPECT_LT(ps.d_plus.bottomRows(8).norm() + ps.d_plus.topRows(4).norm(), 1e-10);
    EXPECT_LT(ps.d_minus.topRows(12).norm(), 1e-10);
    const Matrix both = (Matrix(ps.d_plus.rows(), 16) << ps.d_plus, ps.d_minus).finished();
    EXPECT_LT((both.transpose() * both - Matrix::Identity(16, 16)).norm(), 1e-10);
  }
}

TEST(SignFlip, FixtureBecomesQuaternionic) {
  const auto f = fixture::split_fixture();
  const auto split = split_D(f.metric, f.xi[0], f.xi[1], f.xi[2], f.samples);
  const MetricField h = sign_flip_metric(f.metric, split);
  EXPECT_EQ(h.kind(), MetricKind::kSignFlipped);
  for (const auto& sp : f.samples.points) {
    const Vector& p = sp.coords();
    const Matrix g = f.metric.gram(p);
    const Matrix hg = h.gram(p);
    const Matrix d = distribution_d(f.metric, p, f.xi[0], f.xi[1], f.xi[2]);
    const auto phi = contact_endomorphisms(f.metric, f.xi[0], f.xi[1], f.xi[2], p);
    EXPECT_GT(quaternionic_residual(g, d, phi[0], phi[1], phi[2]), 1.0);
    const Matrix psi1 = reassociate_endomorphism(hg, g, phi[0]);
    const Matrix psi2 = reassociate_endomorphism(hg, g, phi[1]);
    const Matrix psi3 = reassociate_endomorphism(hg, g, phi[2]);
    EXPECT_LT(quaternionic_residual(g, d, psi1, psi2, psi3), 1e-10);
    // h is -g on the middle block and g elsewhere.
    const Matrix flip = hg.block(4, 4, 8, 8) + Matrix::Identity(8, 8);
    EXPECT_LT(flip.norm(), 1e-10);
    EXPECT_LT((hg.block(12, 12, 8, 8) - Matrix::Identity(8, 8)).norm(), 1e-10);
  }
}

TEST(SignFlip, VaryingDimensionsAreRejected) {
  SplittingResult s;
  s.constant_dims = false;
  EXPECT_THROW(sign_flip_metric(MetricField::round(), s), PreconditionError);
}

TEST(SplitEndomorphisms, NonInvolutiveProductIsStructuralError) {
  std::mt19937_64 rng(40);
  const Matrix d = Matrix::Identity(4, 4).leftCols(2);
  const Matrix a = oracle::random_skew(rng, 4);
  EXPECT_THROW(split_endomorphisms(Matrix::Identity(4, 4), d, a, a, a), StructuralError);
}

TEST(Nijenhuis, PairsVanishOnRoundSphere) {
  const auto ex = build_round_sasakian(2);
  const Vector p = sample_sphere(2, 1, 3).points[0].coords();
  Matrix q = tangent_frame(p);
  const Vector xi = ex.xi(p);
  std::vector<Vector> vs;
  for (Eigen::Index i = 0; i < 3; ++i) {
    Vector v = q.col(i);
    vs.push_back(v - v.dot(xi) * xi);
  }
  for (const auto& n : nijenhuis_pairs(ex.metric, ex.xi, p, vs)) EXPECT_LT(n.norm(), 1e-6);
}
