#include <benchmark/benchmark.h>

#include <sasaki/sasaki.hpp>

namespace {

using namespace sasaki;

void BM_SampleSphere(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_sphere(n, 200, 42));
}
BENCHMARK(BM_SampleSphere)->DenseRange(1, 3);

void BM_CheckKillingRound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ex = build_round_sasakian(n);
  const auto s = sample_sphere(n, 200, 42);
  for (auto _ : state) benchmark::DoNotOptimize(check_killing(ex.metric, ex.xi, s));
}
BENCHMARK(BM_CheckKillingRound)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

// Finite-difference path: the deformed metric has no closed-form connection.
void BM_CovariantDerivativeGF(benchmark::State& state) {
  const auto ex = build_gF(3, 0.3);
  const auto s = sample_sphere(3, 16, 42);
  std::size_t i = 0;
  for (auto _ : state) {
    const Vector& p = s.points[i++ % s.points.size()].coords();
    benchmark::DoNotOptimize(covariant_derivative_matrix(ex.metric, ex.xi, p));
  }
}
BENCHMARK(BM_CovariantDerivativeGF)->Unit(benchmark::kMicrosecond);

void BM_CheckSasakianIrregular(benchmark::State& state) {
  const auto ex = build_irregular(2, ExactReal::parse("irr:sqrt2m1"));
  const auto s = sample_sphere(2, 20, 42);
  for (auto _ : state) benchmark::DoNotOptimize(check_sasakian(ex.metric, ex.xi, s));
}
BENCHMARK(BM_CheckSasakianIrregular)->Unit(benchmark::kMillisecond);

void BM_StandardDecomposition(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto alg = IsometryAlgebra::so(dim);
  const LinearKillingField xi(complex_structure(dim));
  for (auto _ : state) benchmark::DoNotOptimize(standard_decomposition(alg, xi));
}
BENCHMARK(BM_StandardDecomposition)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  RotationProfile p;
  for (const char* r : {"1", "2/3", "irr:sqrt2m1", "irr:sqrt3", "5/7"}) {
    p.rates.push_back(ExactReal::parse(r));
  }
  for (auto _ : state) benchmark::DoNotOptimize(classify(p));
}
BENCHMARK(BM_Classify);

void BM_OrbitProbe(benchmark::State& state) {
  Matrix a = Matrix::Zero(4, 4);
  a(1, 0) = 1.0;
  a(0, 1) = -1.0;
  a(3, 2) = 2.0;
  a(2, 3) = -2.0;
  const Vector p = Vector::Constant(4, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(numeric_orbit_probe(a, p, 10.0, 1e-6));
}
BENCHMARK(BM_OrbitProbe)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
