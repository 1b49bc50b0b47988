#include "s1fc/correlator.hpp"
#include "s1fc/lattice.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace s1fc;

namespace {

QMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(num(g), den(g));
  return m;
}

void BM_multiply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  QMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(multiply(a, b));
}

void BM_multiply_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  QMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(multiply_serial(a, b));
}

void BM_correlator(benchmark::State& st) {
  CorrelatorOptions o;
  o.parallel = st.range(1) != 0;
  o.route = st.range(0) == 3 ? Route::Modes : Route::Appendix;
  for (auto _ : st) benchmark::DoNotOptimize(correlator(static_cast<int>(st.range(0)), o));
}

void BM_fused_transfer(benchmark::State& st) {
  MatsubaraData md{{1, 2}, {0, Rational(1, 4)}};
  for (auto _ : st) benchmark::DoNotOptimize(fused_transfer(Rational(2, 7), md));
}

}  // namespace

BENCHMARK(BM_multiply)->Arg(27)->Arg(81);
BENCHMARK(BM_multiply_serial)->Arg(27)->Arg(81);
// {n, parallel}; n=3 uses the mode route.
BENCHMARK(BM_correlator)->Args({2, 0})->Args({2, 1})->Args({3, 0})->Args({3, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fused_transfer)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
