#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "clientnet/baselines.hpp"
#include "clientnet/evaluation.hpp"
#include "clientnet/metrics.hpp"
#include "clientnet/nora.hpp"
#include "clientnet/synthgen.hpp"

using namespace clientnet;

namespace {

// Roughly five edges per node; cached across benchmark repetitions.
const EcosystemGraph& graph(std::size_t nodes) {
  static std::map<std::size_t, EcosystemGraph> cache;
  auto it = cache.find(nodes);
  if (it == cache.end()) {
    GenConfig cfg;
    cfg.company_count = nodes * 3 / 5;
    cfg.person_count = nodes - cfg.company_count - 1;
    cfg.roles_per_person = 5.0;
    cfg.b2b_per_company = 5.2;
    cfg.seed = 7;
    it = cache.emplace(nodes, generate(cfg)).first;
  }
  return it->second;
}

void set_counters(benchmark::State& state, const EcosystemGraph& g) {
  state.counters["nodes"] = static_cast<double>(g.node_count());
  state.counters["edges"] = static_cast<double>(g.edge_count());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}

void BM_NoraD_BreadthFirst(benchmark::State& state) {
  const EcosystemGraph& g = graph(static_cast<std::size_t>(state.range(0)));
  FlowOptions options;
  options.shortest_paths = ShortestPathMethod::BreadthFirst;
  for (auto _ : state) benchmark::DoNotOptimize(nora_score(g, g.root(), NoraVariant::D, options));
  set_counters(state, g);
}
BENCHMARK(BM_NoraD_BreadthFirst)->RangeMultiplier(4)->Range(1 << 14, 1 << 20)->Unit(benchmark::kMillisecond);

void BM_NoraD_Dijkstra(benchmark::State& state) {
  const EcosystemGraph& g = graph(static_cast<std::size_t>(state.range(0)));
  FlowOptions options;
  options.shortest_paths = ShortestPathMethod::Dijkstra;
  for (auto _ : state) benchmark::DoNotOptimize(nora_score(g, g.root(), NoraVariant::D, options));
  set_counters(state, g);
}
BENCHMARK(BM_NoraD_Dijkstra)->RangeMultiplier(4)->Range(1 << 14, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_NoraT(benchmark::State& state) {
  const EcosystemGraph& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nora_score(g, g.root(), NoraVariant::T));
  set_counters(state, g);
}
BENCHMARK(BM_NoraT)->RangeMultiplier(4)->Range(1 << 14, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_RootedPageRank(benchmark::State& state) {
  const EcosystemGraph& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rooted_pagerank(g, g.root()));
  set_counters(state, g);
}
BENCHMARK(BM_RootedPageRank)->RangeMultiplier(4)->Range(1 << 14, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_PropFlow(benchmark::State& state) {
  const EcosystemGraph& g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(propflow(g, g.root()));
  set_counters(state, g);
}
BENCHMARK(BM_PropFlow)->RangeMultiplier(4)->Range(1 << 14, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_Metrics(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<RankedEntry> entries;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    entries.push_back({"N" + std::to_string(i), std::uniform_real_distribution<double>()(rng),
                       rng() % 15 == 0 ? Label::Positive : Label::Negative});
  }
  entries[0].label = Label::Positive;
  entries[1].label = Label::Negative;
  for (auto _ : state) benchmark::DoNotOptimize(compute_metrics(LabeledRanking(entries)));
}
BENCHMARK(BM_Metrics)->Range(1 << 8, 1 << 16);

void BM_Evaluation(benchmark::State& state) {
  GenConfig cfg;
  cfg.company_count = static_cast<std::size_t>(state.range(0));
  cfg.person_count = cfg.company_count / 2;
  EcosystemGraph g = generate(cfg);
  const std::vector<ScoringAlgorithm> algorithms = standard_algorithms();
  for (auto _ : state) benchmark::DoNotOptimize(run_evaluation(g, algorithms));
}
BENCHMARK(BM_Evaluation)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
