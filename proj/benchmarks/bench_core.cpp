#include <benchmark/benchmark.h>

#include <vector>

#include "rankzipf/asymptotics.hpp"
#include "rankzipf/enumeration.hpp"
#include "rankzipf/experiments.hpp"
#include "rankzipf/pascal_simplex.hpp"

using namespace rankzipf;

namespace {

const Alphabet& three() {
  static const Alphabet a = build_alphabet(std::vector<double>{0.5, 0.3, 0.2});
  return a;
}

const Alphabet& monkey() {
  static const Alphabet a = build_alphabet(std::vector<double>(26, 1.0 / 27.0), 1.0 / 27.0);
  return a;
}

}  // namespace

static void BM_SolveGammaMonkey(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_gamma(monkey()));
}
BENCHMARK(BM_SolveGammaMonkey);

static void BM_Multinomial(benchmark::State& state) {
  const auto part = static_cast<std::uint32_t>(state.range(0));
  const Composition k{part, part, part, part};
  for (auto _ : state) benchmark::DoNotOptimize(multinomial(k));
}
BENCHMARK(BM_Multinomial)->Arg(10)->Arg(100)->Arg(1000);

static void BM_QTilde(benchmark::State& state) {
  const auto w = letter_weights(three());
  const double z = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(q_tilde(w, z));
}
BENCHMARK(BM_QTilde)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_ClassStream(benchmark::State& state) {
  const auto w = letter_weights(three());
  for (auto _ : state) {
    Enumerator e(w);
    for (int i = 0; i < state.range(0); ++i) benchmark::DoNotOptimize(e.next());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClassStream)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_RankQuery(benchmark::State& state) {
  const BigInt r(static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_to_probability(three(), r));
}
BENCHMARK(BM_RankQuery)->Arg(1'000)->Arg(1'000'000)->Arg(1'000'000'000)->Unit(benchmark::kMillisecond);

static void BM_ConvergeQtilde150(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(converge_qtilde(three(), 150.0, 0.5));
}
BENCHMARK(BM_ConvergeQtilde150)->Unit(benchmark::kMillisecond);

static void BM_IntegralF(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integral_f(three(), z));
}
BENCHMARK(BM_IntegralF)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
