#include <benchmark/benchmark.h>

#include <map>

#include "spiralrg/eigensolver.hpp"
#include "spiralrg/fixedpoints.hpp"
#include "spiralrg/hamiltonian.hpp"

using namespace spiralrg;

namespace {

const Tridiagonal& quartic_tridiagonal(int N) {
  static std::map<int, Tridiagonal> cache;
  auto it = cache.find(N);
  if (it == cache.end()) {
    it = cache.emplace(N, band_to_tridiagonal(build_matrix<double>({ModelKind::Quartic, 10.0}, N))).first;
  }
  return it->second;
}

void BM_BisectionSerial(benchmark::State& state) {
  const auto& t = quartic_tridiagonal(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tridiagonal_eigenvalues(t, 64, 1e-10));
}

void BM_BisectionParallel(benchmark::State& state) {
  const auto& t = quartic_tridiagonal(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tridiagonal_eigenvalues_parallel(t, 64, 1e-10));
}

void BM_BandReduction(benchmark::State& state) {
  const auto m = build_matrix<double>({ModelKind::Quartic, 10.0}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(band_to_tridiagonal(m));
}

void BM_BuildLadder(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_matrix<double>({ModelKind::Sextic, 1.0}, N, ElementSource::Ladder));
  }
}

void BM_BuildClosedForm(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_matrix<double>({ModelKind::Sextic, 1.0}, N, ElementSource::ClosedForm));
  }
}

FixedPointSearch sextic_search() {
  FixedPointSearch s;
  s.stepper = Stepper::SexticLargeN;
  s.N = 1000;
  s.g = 1.0;
  return s;
}

void BM_FixedPointsSerial(benchmark::State& state) {
  const auto s = sextic_search();
  for (auto _ : state) benchmark::DoNotOptimize(find_numeric_serial(s));
}

void BM_FixedPointsParallel(benchmark::State& state) {
  const auto s = sextic_search();
  for (auto _ : state) benchmark::DoNotOptimize(find_numeric(s));
}

}  // namespace

BENCHMARK(BM_BisectionSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BisectionParallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BandReduction)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildLadder)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildClosedForm)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FixedPointsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FixedPointsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
