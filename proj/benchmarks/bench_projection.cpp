#include <random>

#include <benchmark/benchmark.h>

#include "isocone/isotonicity.hpp"
#include "isocone/opt_kernels.hpp"
#include "isocone/projection.hpp"

using namespace isocone;

namespace {

Vector randomVector(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> n;
  Vector v(m);
  for (int i = 0; i < m; ++i) v(i) = n(rng);
  return v;
}

Matrix randomMatrix(std::mt19937_64& rng, int rows, int cols) {
  Matrix a(rows, cols);
  for (int j = 0; j < cols; ++j) a.col(j) = randomVector(rng, rows);
  return a;
}

void projectCone(benchmark::State& state, const ConeSpec& k) {
  std::mt19937_64 rng(1);
  std::vector<Vector> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(randomVector(rng, k.dim()));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(project(k, xs[i++ % xs.size()]).point);
  }
}

void BM_ProjectOrthant(benchmark::State& s) { projectCone(s, ConeSpec::orthant(static_cast<int>(s.range(0)))); }
void BM_ProjectLorentz(benchmark::State& s) { projectCone(s, ConeSpec::lorentz(static_cast<int>(s.range(0)))); }
void BM_ProjectMonotone(benchmark::State& s) {
  projectCone(s, ConeSpec::monotoneNonneg(static_cast<int>(s.range(0))));
}
void BM_ProjectSimplicial(benchmark::State& s) {
  std::mt19937_64 rng(2);
  const int m = static_cast<int>(s.range(0));
  projectCone(s, ConeSpec::simplicial(Matrix(randomMatrix(rng, m, m) + 4.0 * Matrix::Identity(m, m))));
}
void BM_ProjectHalfspaces(benchmark::State& s) {
  // Monotone cone written as halfspaces: exercises Dykstra plus the active-set finish.
  const int m = static_cast<int>(s.range(0));
  projectCone(s, ConeSpec::halfspaces(m, facetNormals(ConeSpec::monotoneNonneg(m))));
}

void BM_Nnls(benchmark::State& s) {
  std::mt19937_64 rng(3);
  const int n = static_cast<int>(s.range(0));
  const Matrix a = randomMatrix(rng, n + 4, n);
  const Vector b = randomVector(rng, n + 4);
  for (auto _ : s) benchmark::DoNotOptimize(nnls(a, b).coefficients);
}

void BM_FalsifyOrthant(benchmark::State& s) {
  const int m = static_cast<int>(s.range(0));
  const auto k = ConeSpec::orthant(m);
  FalsifierConfig cfg;
  cfg.trials = 1000;
  for (auto _ : s) benchmark::DoNotOptimize(falsify(k, k, cfg));
  s.SetItemsProcessed(s.iterations() * cfg.trials);
}

}  // namespace

BENCHMARK(BM_ProjectOrthant)->Arg(10)->Arg(100);
BENCHMARK(BM_ProjectLorentz)->Arg(10)->Arg(100);
BENCHMARK(BM_ProjectMonotone)->Arg(10)->Arg(100);
BENCHMARK(BM_ProjectSimplicial)->Arg(8)->Arg(32);
BENCHMARK(BM_ProjectHalfspaces)->Arg(4)->Arg(8);
BENCHMARK(BM_Nnls)->Arg(8)->Arg(32);
BENCHMARK(BM_FalsifyOrthant)->Arg(3)->Arg(5);
BENCHMARK_MAIN();
