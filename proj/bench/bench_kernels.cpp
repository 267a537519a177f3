#include <benchmark/benchmark.h>

#include <random>

#include "ndp/baselines.hpp"
#include "ndp/evaluation.hpp"

using namespace ndp;

namespace {

std::vector<ParamVector> population(const EncodingConfig& enc, const EnvSpec& env, std::size_t size) {
  Rng rng(1);
  std::normal_distribution<double> d(0.0, 0.1);
  std::vector<ParamVector> pop(size, ParamVector(genome_length(enc, env)));
  for (auto& c : pop)
    for (auto& x : c) x = d(rng);
  return pop;
}

EncodingConfig encoding(int e) {
  EncodingConfig enc;
  enc.encoding = static_cast<Encoding>(e);
  return enc;
}

void BM_PopulationSerial(benchmark::State& st) {
  const EnvSpec env = make_env(EnvKind::CartPole);
  const EncodingConfig enc = encoding(static_cast<int>(st.range(0)));
  const auto pop = population(enc, env, 32);
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_population_serial(pop, enc, env, 1, 0, 0));
  st.SetLabel(encoding_name(enc.encoding));
}

void BM_PopulationParallel(benchmark::State& st) {
  const EnvSpec env = make_env(EnvKind::CartPole);
  const EncodingConfig enc = encoding(static_cast<int>(st.range(0)));
  const auto pop = population(enc, env, 32);
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_population(pop, enc, env, 1, 0, 0));
  st.SetLabel(encoding_name(enc.encoding));
}

void BM_OneShotReference(benchmark::State& st) {
  const std::size_t n = static_cast<std::size_t>(st.range(0));
  Rng rng(2);
  std::normal_distribution<double> d(0.0, 0.1);
  ParamVector g(one_shot_genome_length(n));
  for (auto& x : g) x = d(rng);
  for (auto _ : st) benchmark::DoNotOptimize(build_one_shot_reference(g, 4, 1, n));
}

void BM_OneShot(benchmark::State& st) {
  const std::size_t n = static_cast<std::size_t>(st.range(0));
  Rng rng(2);
  std::normal_distribution<double> d(0.0, 0.1);
  ParamVector g(one_shot_genome_length(n));
  for (auto& x : g) x = d(rng);
  for (auto _ : st) benchmark::DoNotOptimize(build_one_shot(g, 4, 1, n));
}

}  // namespace

BENCHMARK(BM_PopulationSerial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PopulationParallel)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OneShotReference)->Arg(25)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OneShot)->Arg(25)->Arg(100)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
