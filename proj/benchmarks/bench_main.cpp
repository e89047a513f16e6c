#include <benchmark/benchmark.h>

#include "renyimono/convexroof.hpp"
#include "renyimono/monogamy.hpp"
#include "renyimono/rng.hpp"
#include "renyimono/states.hpp"
#include "renyimono/sweep.hpp"

using namespace renyimono;

static void BM_HermitianEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_density(n, 1u << n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(rho.matrix()));
}
BENCHMARK(BM_HermitianEig)->DenseRange(1, 5);

static void BM_WoottersConcurrence(benchmark::State& state) {
  const DensityMatrix rho = random_density(2, 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_two_qubit(rho));
}
BENCHMARK(BM_WoottersConcurrence);

static void BM_ConcurrenceHermitianForm(benchmark::State& state) {
  const DensityMatrix rho = random_density(2, 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_two_qubit_hermitian_form(rho));
}
BENCHMARK(BM_ConcurrenceHermitianForm);

static void BM_MeasureChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ChainState chain(haar_random_pure(n, 3));
  for (auto _ : state) benchmark::DoNotOptimize(measure_chain(chain));
}
BENCHMARK(BM_MeasureChain)->DenseRange(3, 6);

static void BM_RoofUpperBound(benchmark::State& state) {
  const DensityMatrix rho = random_density(2, static_cast<std::size_t>(state.range(0)), 4);
  RoofSchedule s;
  for (auto _ : state) {
    benchmark::DoNotOptimize(roof_upper_bound({rho, RoofMeasure::concurrence(), s}).value);
  }
}
BENCHMARK(BM_RoofUpperBound)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SweepSample(benchmark::State& state) {
  SweepConfig c;
  c.family = {family::HaarPure{}, static_cast<std::size_t>(state.range(0))};
  c.alphas = {2, 2.5, 3};
  c.etas = {1, 1.5, 2, 3};
  c.lemmas = {Lemma::L2};
  c.samples = 100;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(c).summary.violations);
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SweepSample)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
