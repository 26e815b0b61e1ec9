// Serial reference vs OpenMP kernels on synthetic data.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mars/batch.hpp"

namespace {

using namespace mars;

Generation synth_generation(std::mt19937_64& rng, std::size_t len) {
  static const char* kWords[] = {"the", "Red", "Planet", "is", "Mars", "known",
                                 "as", "capital", "of", "France", "Paris", "a"};
  std::uniform_real_distribution<double> p(0.05, 1.0);
  Generation g;
  for (std::size_t i = 0; i < len; ++i) {
    std::string t = (i == 0 ? "" : " ") + std::string(kWords[rng() % 12]);
    g.tokens.push_back({t, std::log(p(rng))});
    g.text += t;
  }
  return g;
}

std::vector<GenerationRecord> synth_records(std::size_t n) {
  std::mt19937_64 rng(42);
  std::vector<GenerationRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    GenerationRecord r;
    r.id = "r" + std::to_string(i);
    r.question = "Which planet is known as the Red Planet?";
    r.answer = synth_generation(rng, 8 + rng() % 24);
    for (int b = 0; b < 5; ++b) r.samples.push_back(synth_generation(rng, 3 + rng() % 6));
    r.correctness = (i % 2) == 0;
    out.push_back(std::move(r));
  }
  return out;
}

const std::vector<GenerationRecord>& records() {
  static const auto recs = synth_records(256);
  return recs;
}

void BM_ScoreRecordsSerial(benchmark::State& state) {
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_records_serial(records(), UEOptions{},
                                                  {&imp, &match},
                                                  MissingSamples::Fail));
  }
  state.SetItemsProcessed(state.iterations() * records().size());
}
BENCHMARK(BM_ScoreRecordsSerial)->Unit(benchmark::kMillisecond);

void BM_ScoreRecordsParallel(benchmark::State& state) {
  HeuristicImportanceProvider imp;
  NormalizedMatchEquivalence match;
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_records(records(), UEOptions{}, {&imp, &match},
                                           MissingSamples::Fail, jobs));
  }
  state.SetItemsProcessed(state.iterations() * records().size());
}
BENCHMARK(BM_ScoreRecordsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

std::vector<Generation> generations() {
  std::mt19937_64 rng(7);
  std::vector<Generation> out;
  for (int i = 0; i < 20000; ++i) out.push_back(synth_generation(rng, 16 + rng() % 48));
  return out;
}

void BM_LengthNormalizedSerial(benchmark::State& state) {
  static const auto gens = generations();
  for (auto _ : state) {
    benchmark::DoNotOptimize(length_normalized_batch_serial(gens));
  }
  state.SetItemsProcessed(state.iterations() * gens.size());
}
BENCHMARK(BM_LengthNormalizedSerial);

void BM_LengthNormalizedParallel(benchmark::State& state) {
  static const auto gens = generations();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(length_normalized_batch(gens, jobs));
  }
  state.SetItemsProcessed(state.iterations() * gens.size());
}
BENCHMARK(BM_LengthNormalizedParallel)->Arg(1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
