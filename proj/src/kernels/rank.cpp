#include "entlink/kernels/rank.hpp"

#include <algorithm>
#include <numeric>

namespace entlink::kernels {

namespace {

// Below this size the OpenMP fork/join costs more than the loop.
constexpr std::size_t kParallelThreshold = 4096;

double serial_sum(std::span<const double> v) {
  double total = 0.0;
  for (double x : v) total += x;
  return total;
}

void normalize_or_keep(std::vector<double>& next, std::vector<double>& current) {
  const double total = serial_sum(next);
  if (total > 0.0) {
    for (double& x : next) x /= total;
    current.swap(next);
  }
}

}  // namespace

CsrGraph CsrGraph::from_edges(std::size_t node_count, std::span<const EdgePair> edges) {
  std::vector<EdgePair> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  CsrGraph g;
  g.node_count = node_count;
  g.out_offsets.assign(node_count + 1, 0);
  g.in_offsets.assign(node_count + 1, 0);
  for (const auto& [u, v] : sorted) {
    ++g.out_offsets[u + 1];
    ++g.in_offsets[v + 1];
  }
  std::partial_sum(g.out_offsets.begin(), g.out_offsets.end(), g.out_offsets.begin());
  std::partial_sum(g.in_offsets.begin(), g.in_offsets.end(), g.in_offsets.begin());

  g.out_targets.resize(sorted.size());
  g.in_sources.resize(sorted.size());
  std::vector<std::size_t> out_fill(g.out_offsets.begin(), g.out_offsets.end() - 1);
  std::vector<std::size_t> in_fill(g.in_offsets.begin(), g.in_offsets.end() - 1);
  for (const auto& [u, v] : sorted) {
    g.out_targets[out_fill[u]++] = v;
    g.in_sources[in_fill[v]++] = u;
  }
  return g;
}

std::vector<double> pagerank_serial(const CsrGraph& g, const PageRankParams& params) {
  const std::size_t n = g.node_count;
  if (n == 0) return {};
  const double d = params.damping;
  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);

  for (int it = 0; it < params.iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    double dangling = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      const auto succ = g.successors(u);
      if (succ.empty()) {
        dangling += rank[u];
        continue;
      }
      const double share = rank[u] / static_cast<double>(succ.size());
      for (NodeId v : succ) next[v] += share;
    }
    const double base = (1.0 - d) / static_cast<double>(n) + d * dangling / static_cast<double>(n);
    for (std::size_t v = 0; v < n; ++v) next[v] = base + d * next[v];
    rank.swap(next);
  }
  return rank;
}

std::vector<double> pagerank_parallel(const CsrGraph& g, const PageRankParams& params) {
  const std::size_t n = g.node_count;
  if (n == 0) return {};
  const double d = params.damping;
  const long count = static_cast<long>(n);
  const bool wide = n >= kParallelThreshold;
  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  std::vector<double> share(n);

  for (int it = 0; it < params.iterations; ++it) {
#pragma omp parallel for schedule(static) if (wide)
    for (long u = 0; u < count; ++u) {
      const std::size_t deg = g.out_degree(static_cast<NodeId>(u));
      share[u] = deg == 0 ? 0.0 : rank[u] / static_cast<double>(deg);
    }
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (g.out_degree(static_cast<NodeId>(u)) == 0) dangling += rank[u];
    }
    const double base = (1.0 - d) / static_cast<double>(n) + d * dangling / static_cast<double>(n);

#pragma omp parallel for schedule(dynamic, 256) if (wide)
    for (long v = 0; v < count; ++v) {
      double incoming = 0.0;
      for (NodeId u : g.predecessors(static_cast<NodeId>(v))) incoming += share[u];
      next[v] = base + d * incoming;
    }
    rank.swap(next);
  }
  return rank;
}

HitsScores hits_serial(const CsrGraph& g, int iterations, const HitsObserver& observer) {
  const std::size_t n = g.node_count;
  HitsScores s;
  if (n == 0) return s;
  s.hub.assign(n, 1.0 / static_cast<double>(n));
  s.authority.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);

  for (int it = 0; it < iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v : g.successors(u)) next[v] += s.hub[u];
    normalize_or_keep(next, s.authority);

    next.assign(n, 0.0);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v : g.successors(u)) next[u] += s.authority[v];
    normalize_or_keep(next, s.hub);

    if (observer) observer(it, s.hub, s.authority);
  }
  return s;
}

HitsScores hits_parallel(const CsrGraph& g, int iterations, const HitsObserver& observer) {
  const std::size_t n = g.node_count;
  HitsScores s;
  if (n == 0) return s;
  const long count = static_cast<long>(n);
  const bool wide = n >= kParallelThreshold;
  s.hub.assign(n, 1.0 / static_cast<double>(n));
  s.authority.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);

  for (int it = 0; it < iterations; ++it) {
#pragma omp parallel for schedule(dynamic, 256) if (wide)
    for (long v = 0; v < count; ++v) {
      double acc = 0.0;
      for (NodeId u : g.predecessors(static_cast<NodeId>(v))) acc += s.hub[u];
      next[v] = acc;
    }
    normalize_or_keep(next, s.authority);

#pragma omp parallel for schedule(dynamic, 256) if (wide)
    for (long u = 0; u < count; ++u) {
      double acc = 0.0;
      for (NodeId v : g.successors(static_cast<NodeId>(u))) acc += s.authority[v];
      next[u] = acc;
    }
    normalize_or_keep(next, s.hub);

    if (observer) observer(it, s.hub, s.authority);
  }
  return s;
}

}  // namespace entlink::kernels
