#include <benchmark/benchmark.h>

#include "wfts/analysis.hpp"
#include "wfts/model_io.hpp"
#include "wfts/symbolic_scc.hpp"

namespace {

using wfts::Mode;

const wfts::AnalysisOptions kNoWitness{.witnesses = false};

void BM_TaxiFamily(benchmark::State& state) {
  const wfts::Wfts w = wfts::generateTaxi(static_cast<unsigned>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(wfts::analyzeFamily(w, Mode::Max, kNoWitness));
  state.counters["products"] = static_cast<double>(w.featureModel().productCount());
}

void BM_TaxiProduct(benchmark::State& state) {
  const wfts::Wfts w = wfts::generateTaxi(static_cast<unsigned>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(wfts::analyzeProductBased(w, Mode::Max, kNoWitness));
  state.counters["products"] = static_cast<double>(w.featureModel().productCount());
}

void BM_MinepumpFamily(benchmark::State& state) {
  const wfts::Wfts w = wfts::generateMinepumpLite();
  for (auto _ : state)
    benchmark::DoNotOptimize(wfts::analyzeFamily(w, Mode::Max, kNoWitness));
}

void BM_MinepumpProduct(benchmark::State& state) {
  const wfts::Wfts w = wfts::generateMinepumpLite();
  for (auto _ : state)
    benchmark::DoNotOptimize(wfts::analyzeProductBased(w, Mode::Max, kNoWitness));
}

// Front half of the family pipeline in isolation: DFS, tree and symbolic SCCs.
void BM_TaxiSymbolicSccs(benchmark::State& state) {
  const wfts::Wfts w = wfts::expandLengths(wfts::generateTaxi(static_cast<unsigned>(state.range(0))));
  for (auto _ : state) {
    auto tree = wfts::buildFinishingTimesTree(wfts::dfsFts(w), w.featureModel());
    benchmark::DoNotOptimize(wfts::symbolicSccs(tree, w));
  }
}

} // namespace

BENCHMARK(BM_TaxiFamily)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TaxiProduct)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinepumpFamily)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MinepumpProduct)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TaxiSymbolicSccs)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
