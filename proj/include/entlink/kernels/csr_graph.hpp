#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace entlink::kernels {

using NodeId = std::uint32_t;
using EdgePair = std::pair<NodeId, NodeId>;

// Compressed adjacency in both directions. Edges are a set: duplicate
// (source, target) pairs collapse on construction.
struct CsrGraph {
  std::size_t node_count = 0;
  std::vector<std::size_t> out_offsets{0};
  std::vector<NodeId> out_targets;
  std::vector<std::size_t> in_offsets{0};
  std::vector<NodeId> in_sources;

  static CsrGraph from_edges(std::size_t node_count, std::span<const EdgePair> edges);

  std::size_t edge_count() const noexcept { return out_targets.size(); }
  std::size_t out_degree(NodeId u) const noexcept { return out_offsets[u + 1] - out_offsets[u]; }

  std::span<const NodeId> successors(NodeId u) const noexcept {
    return {out_targets.data() + out_offsets[u], out_degree(u)};
  }
  std::span<const NodeId> predecessors(NodeId v) const noexcept {
    return {in_sources.data() + in_offsets[v], in_offsets[v + 1] - in_offsets[v]};
  }
};

}  // namespace entlink::kernels
