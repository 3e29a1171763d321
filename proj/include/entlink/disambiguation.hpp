#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "entlink/candidates.hpp"
#include "entlink/kb.hpp"
#include "entlink/kernels/csr_graph.hpp"
#include "entlink/kernels/rank.hpp"
#include "entlink/linker_config.hpp"

namespace entlink {

// Per-request graph over the candidates and their depth-bounded KB
// neighbourhood. Nodes are sorted by IRI; edge endpoints index into `nodes`.
struct DisambiguationGraph {
  std::vector<Iri> nodes;
  std::vector<int> level;                          // BFS round the node entered at, 0 for candidates
  std::vector<std::set<std::size_t>> mentions;     // mention indices a node is a candidate for
  std::vector<kernels::EdgePair> edges;            // sorted, duplicate-free

  std::optional<std::size_t> index_of(const Iri& iri) const;
  kernels::CsrGraph csr() const;
  bool operator==(const DisambiguationGraph&) const = default;
};

// Seeds with every candidate, expands along KB out-edges for `depth` rounds,
// then adds every KB edge whose endpoints are both in the graph.
DisambiguationGraph build_graph(const CandidateLists& candidates, const OutEdgeMap& kb_graph, int depth);

struct NodeScore {
  double hub = 0.0;
  double authority = 0.0;
  double pagerank = 0.0;
};

using ScoreMap = std::map<Iri, NodeScore>;

ScoreMap run_hits(const DisambiguationGraph& g, int iterations, const kernels::HitsObserver& observer = {});
ScoreMap run_pagerank(const DisambiguationGraph& g, double damping, int iterations);

struct MentionLink {
  std::optional<Iri> chosen;  // nullopt is NIL
  double score = 0.0;
  std::size_t candidates_considered = 0;

  bool operator==(const MentionLink&) const = default;
};

struct LinkResult {
  std::vector<MentionLink> links;

  bool operator==(const LinkResult&) const = default;
};

// Highest authority (hits) or pagerank among each mention's candidates;
// ties go to the lexicographically smallest IRI, empty lists to NIL.
LinkResult select(const ScoreMap& scores, const CandidateLists& candidates, Algorithm algorithm);

}  // namespace entlink
