#include <random>

#include <benchmark/benchmark.h>

#include "amalg/field.hpp"
#include "amalg/group.hpp"
#include "amalg/kernels.hpp"

using namespace amalg;

namespace {

template <class F>
Matrix<F> random_matrix(std::size_t n, const F& field, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> v(-9, 9);
  Matrix<F> m(n, n + n / 2, field);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = field.from_int(v(rng));
  return m;
}

template <class F, bool Parallel>
void BM_rref(benchmark::State& state, const F& field) {
  const auto base = random_matrix(static_cast<std::size_t>(state.range(0)), field, 7);
  for (auto _ : state) {
    auto m = base;
    auto piv = Parallel ? kernels::rref_parallel(m, field) : kernels::rref_serial(m, field);
    benchmark::DoNotOptimize(piv);
  }
}

void BM_rref_q_serial(benchmark::State& s) { BM_rref<RationalField, false>(s, RationalField{}); }
void BM_rref_q_parallel(benchmark::State& s) { BM_rref<RationalField, true>(s, RationalField{}); }
void BM_rref_p_serial(benchmark::State& s) { BM_rref<PrimeField, false>(s, PrimeField(32003)); }
void BM_rref_p_parallel(benchmark::State& s) { BM_rref<PrimeField, true>(s, PrimeField(32003)); }

void BM_normal_forms(benchmark::State& state, bool parallel) {
  const auto d = sl2z_preset();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_normal_forms(d, static_cast<int>(state.range(0)), parallel));
}

void BM_normal_forms_serial(benchmark::State& s) { BM_normal_forms(s, false); }
void BM_normal_forms_parallel(benchmark::State& s) { BM_normal_forms(s, true); }

}  // namespace

BENCHMARK(BM_rref_q_serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_q_parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_rref_p_serial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_p_parallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_normal_forms_serial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_normal_forms_parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
