// Randomized invariants, each run over a fixed list of seeds.

#include <gtest/gtest.h>

#include <random>

#include <sasaki/sasaki.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace sasaki;

namespace {

constexpr int kRuns = 12;

Rational random_rational(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, 9);
  return Rational(num(rng), den(rng));
}

ExactReal random_exact(std::mt19937_64& rng) {
  ExactReal x(random_rational(rng, -9, 9));
  std::uniform_int_distribution<int> pick(1, ExactReal::kBasisSize - 1);
  x = x + ExactReal::generator(static_cast<ExactReal::Basis>(pick(rng))) * random_rational(rng, -9, 9);
  return x;
}

}  // namespace

TEST(Property, SamplingAndReportsAreDeterministic) {
  for (std::uint64_t seed = 0; seed < kRuns; ++seed) {
    const auto a = sample_sphere(2, 15, seed);
    const auto b = sample_sphere(2, 15, seed);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      ASSERT_TRUE(a.points[i].coords() == b.points[i].coords());
    }
    const auto ex = build_irregular(2, ExactReal(Rational(1, 3)));
    const auto r1 = to_json(check_sasakian(ex.metric, ex.xi, a)).dump();
    const auto r2 = to_json(check_sasakian(ex.metric, ex.xi, b)).dump();
    EXPECT_EQ(r1, r2);
  }
}

TEST(Property, SasakianImpliesKContact) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> num(0, 8);
  for (int run = 0; run < kRuns; ++run) {
    const int n = 1 + run % 3;
    const auto s = sample_sphere(n, 6, static_cast<std::uint64_t>(run));
    std::vector<std::pair<MetricField, VectorField>> cases;
    const auto round = build_round_sasakian(n);
    cases.emplace_back(round.metric, round.xi);
    const auto irr = build_irregular(n, ExactReal(Rational(num(rng), 9)));
    cases.emplace_back(irr.metric, irr.xi);
    if (n == 3) {
      const auto gf = build_gF(3, 0.05 * run);
      cases.emplace_back(gf.metric, gf.xi);
    }
    for (const auto& [g, xi] : cases) {
      if (check_sasakian(g, xi, s).pass) {
        EXPECT_TRUE(check_kcontact(g, xi, s).pass) << "run " << run;
      }
    }
  }
}

TEST(Property, TangentProjectorIdentities) {
  std::mt19937_64 rng(102);
  for (int run = 0; run < kRuns; ++run) {
    const Eigen::Index dim = 4 + 2 * (run % 3);
    const Vector p = oracle::random_unit(rng, dim);
    const Matrix proj = tangent_projector(p);
    EXPECT_LT((proj * proj - proj).norm(), 1e-14);
    EXPECT_LT((proj - proj.transpose()).norm(), 1e-15);
    EXPECT_NEAR(proj.trace(), static_cast<double>(dim - 1), 1e-13);
  }
}

TEST(Property, SplitProjectorsAreComplementary) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto f = fixture::split_fixture(3, seed);
    for (const auto& sp : f.samples.points) {
      const Vector& p = sp.coords();
      const PointSplit s = split_d_at(f.metric, f.xi[0], f.xi[1], f.xi[2], p);
      const Matrix pp = s.d_plus * s.d_plus.transpose();
      const Matrix pm = s.d_minus * s.d_minus.transpose();
      const Matrix d = distribution_d(f.metric, p, f.xi[0], f.xi[1], f.xi[2]);
      const Matrix pd = d * d.transpose();
      EXPECT_LT((pp * pp - pp).norm(), 1e-10);
      EXPECT_LT((pp * pm).norm(), 1e-10);
      EXPECT_LT((pp + pm - pd).norm(), 1e-10);
      EXPECT_LT(s.square_residual, 1e-10);
    }
  }
}

TEST(Property, BracketIsALieBracket) {
  std::mt19937_64 rng(103);
  for (int run = 0; run < kRuns; ++run) {
    const LinearKillingField x(oracle::random_skew(rng, 6));
    const LinearKillingField y(oracle::random_skew(rng, 6));
    EXPECT_LT((bracket(x, y).matrix() + bracket(y, x).matrix()).norm(), 1e-12);
    // ad-invariance of B(X, Y) = -tr(XY).
    const LinearKillingField z(oracle::random_skew(rng, 6));
    const double lhs = IsometryAlgebra::inner(bracket(z, x).matrix(), y.matrix());
    const double rhs = -IsometryAlgebra::inner(x.matrix(), bracket(z, y).matrix());
    EXPECT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(Property, ExactFieldAxioms) {
  std::mt19937_64 rng(104);
  for (int run = 0; run < 50; ++run) {
    const ExactReal x = random_exact(rng);
    const ExactReal y = random_exact(rng);
    const Rational q = random_rational(rng, 1, 9);
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ((x + y) - y, x);
    EXPECT_EQ((x + y) * q, x * q + y * q);
    EXPECT_NEAR((x + y).value(), x.value() + y.value(), 1e-12);
  }
}

TEST(Property, ClassificationIsScaleAndOrderInvariant) {
  std::mt19937_64 rng(105);
  std::uniform_int_distribution<int> small(1, 6);
  for (int run = 0; run < kRuns; ++run) {
    RotationProfile p;
    for (int k = 0; k < 3; ++k) p.rates.push_back(ExactReal(Rational(small(rng), small(rng))));
    if (run % 2 == 1) p.rates.push_back(ExactReal::parse("irr:sqrt3"));
    RotationProfile scaled = p;
    const Rational q = random_rational(rng, 1, 9);
    for (auto& r : scaled.rates) r = r * q;
    std::reverse(scaled.rates.begin(), scaled.rates.end());
    const auto a = classify(p);
    const auto b = classify(scaled);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.closure_torus_dim, b.closure_torus_dim);
    EXPECT_EQ(a.exceptional_periods.size(), b.exceptional_periods.size());
    if (a.generic_period) {
      EXPECT_NEAR(a.generic_period->value(), b.generic_period->value() * boost::rational_cast<double>(q),
                  1e-9);
    }
  }
}

TEST(Property, KillingFieldsOfRoundSphereAreExactlyTheSkewOnes) {
  std::mt19937_64 rng(106);
  const auto s = sample_sphere(1, 8, 9);
  for (int run = 0; run < kRuns; ++run) {
    const Matrix a = oracle::random_skew(rng, 4);
    EXPECT_TRUE(check_killing(MetricField::round(), VectorField::linear(a), s).pass);
    Matrix b = a;
    b(0, 0) += 0.5;
    EXPECT_FALSE(check_killing(MetricField::round(), VectorField::linear(b), s).pass);
  }
}
