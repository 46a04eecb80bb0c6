// Parallel kernels against their serial references.

#include "symtail/kleitman.hpp"
#include "symtail/oracles.hpp"

#include <benchmark/benchmark.h>

using namespace symtail;
using Q = ExactRational;

namespace {

KleitmanInstance plane_instance(unsigned n) {
  Rng rng(17);
  return random_kleitman_instance(rng, n, 3, 2, Norm::euclidean);
}

void BM_KleitmanParallel(benchmark::State& state) {
  const auto inst = plane_instance(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kleitman_count(inst));
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << state.range(0)));
}

void BM_KleitmanSerial(benchmark::State& state) {
  const auto inst = plane_instance(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kleitman_count_serial(inst));
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << state.range(0)));
}

SampleConfig gaussian_config() {
  SampleConfig c;
  c.seed = 1;
  c.replications = 100000;
  for (double s : {1.0, 0.5, 2.0, 1.5, 0.75, 1.25}) c.terms.push_back(SamplerSpec::gaussian(s));
  return c;
}

const std::vector<double> kTs{0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5};

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto c = gaussian_config();
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_tails(c, kTs));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.replications));
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto c = gaussian_config();
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_tails_serial(c, kTs));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.replications));
}

SymmetricLatticeFamily small_family() {
  SymmetricLatticeFamily f;
  f.n_max = 4;
  return f;
}

std::vector<Q> half_steps() {
  std::vector<Q> ts;
  for (Q t = 0; t < 4; t += Q(1, 2)) ts.push_back(t);
  return ts;
}

void BM_SweepParallel(benchmark::State& state) {
  const auto instances = family_instances(small_family());
  const auto ts = half_steps();
  for (auto _ : state) benchmark::DoNotOptimize(bound_soundness_sweep(instances, 1, ts));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(instances.size()));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto instances = family_instances(small_family());
  const auto ts = half_steps();
  for (auto _ : state) benchmark::DoNotOptimize(bound_soundness_sweep_serial(instances, 1, ts));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(instances.size()));
}

void BM_FamilySweep(benchmark::State& state) {
  const auto f = small_family();
  const auto ts = half_steps();
  for (auto _ : state) benchmark::DoNotOptimize(family_soundness_sweep(f, 1, ts));
}

}  // namespace

BENCHMARK(BM_KleitmanParallel)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KleitmanSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FamilySweep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
