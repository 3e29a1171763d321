// Serial reference kernels against their OpenMP counterparts.
//
//   ./build/bench/kernels_bench --benchmark_filter=PageRank

#include <random>

#include <benchmark/benchmark.h>

#include "entlink/kernels/ngram.hpp"
#include "entlink/kernels/rank.hpp"

using namespace entlink::kernels;

namespace {

CsrGraph random_graph(std::size_t nodes, std::size_t edges_per_node) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(nodes - 1));
  std::vector<EdgePair> edges;
  edges.reserve(nodes * edges_per_node);
  for (std::size_t i = 0; i < nodes * edges_per_node; ++i) edges.emplace_back(pick(rng), pick(rng));
  return CsrGraph::from_edges(nodes, edges);
}

std::vector<GramSet> random_keys(std::size_t count) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> len(3, 24);
  std::uniform_int_distribution<char32_t> ch(U'a', U'z');
  std::vector<GramSet> keys;
  keys.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::u32string s;
    for (std::size_t k = len(rng); k > 0; --k) s += ch(rng);
    keys.push_back(padded_grams(s, 3));
  }
  return keys;
}

template <auto Kernel>
void BM_PageRank(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, PageRankParams{0.85, 20}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()) * 20);
}

template <auto Kernel>
void BM_Hits(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, 20, {}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()) * 20);
}

template <auto Kernel>
void BM_FuzzyScan(benchmark::State& state) {
  const auto keys = random_keys(static_cast<std::size_t>(state.range(0)));
  const auto query = padded_grams(U"riodejaneiro", 3);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(query, keys, 0.5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_PageRank<pagerank_serial>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_PageRank<pagerank_parallel>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_Hits<hits_serial>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_Hits<hits_parallel>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_FuzzyScan<fuzzy_scan_serial>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_FuzzyScan<fuzzy_scan_parallel>)->Arg(1 << 12)->Arg(1 << 16);

BENCHMARK_MAIN();
