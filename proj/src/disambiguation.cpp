#include "entlink/disambiguation.hpp"

#include <algorithm>

namespace entlink {

std::optional<std::size_t> DisambiguationGraph::index_of(const Iri& iri) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), iri);
  if (it == nodes.end() || *it != iri) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

kernels::CsrGraph DisambiguationGraph::csr() const { return kernels::CsrGraph::from_edges(nodes.size(), edges); }

DisambiguationGraph build_graph(const CandidateLists& candidates, const OutEdgeMap& kb_graph, int depth) {
  std::map<Iri, int> level;
  std::map<Iri, std::set<std::size_t>> mention_sets;
  for (std::size_t m = 0; m < candidates.size(); ++m) {
    for (const auto& c : candidates[m]) {
      level.emplace(c.entity, 0);
      mention_sets[c.entity].insert(m);
    }
  }

  std::vector<Iri> frontier;
  for (const auto& [iri, _] : level) frontier.push_back(iri);
  for (int round = 1; round <= depth && !frontier.empty(); ++round) {
    std::vector<Iri> next;
    for (const auto& u : frontier) {
      const auto out = kb_graph.find(u);
      if (out == kb_graph.end()) continue;
      for (const auto& e : out->second) {
        if (level.emplace(e.target, round).second) next.push_back(e.target);
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }

  DisambiguationGraph g;
  g.nodes.reserve(level.size());
  for (const auto& [iri, lvl] : level) {
    g.nodes.push_back(iri);
    g.level.push_back(lvl);
    const auto ms = mention_sets.find(iri);
    g.mentions.push_back(ms == mention_sets.end() ? std::set<std::size_t>{} : ms->second);
  }

  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    const auto out = kb_graph.find(g.nodes[u]);
    if (out == kb_graph.end()) continue;
    for (const auto& e : out->second) {
      if (const auto v = g.index_of(e.target))
        g.edges.emplace_back(static_cast<kernels::NodeId>(u), static_cast<kernels::NodeId>(*v));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

ScoreMap run_hits(const DisambiguationGraph& g, int iterations, const kernels::HitsObserver& observer) {
  const auto scores = kernels::hits_parallel(g.csr(), iterations, observer);
  ScoreMap out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out.emplace_hint(out.end(), g.nodes[i], NodeScore{scores.hub[i], scores.authority[i], 0.0});
  return out;
}

ScoreMap run_pagerank(const DisambiguationGraph& g, double damping, int iterations) {
  const auto rank = kernels::pagerank_parallel(g.csr(), {damping, iterations});
  ScoreMap out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) out.emplace_hint(out.end(), g.nodes[i], NodeScore{0.0, 0.0, rank[i]});
  return out;
}

LinkResult select(const ScoreMap& scores, const CandidateLists& candidates, Algorithm algorithm) {
  LinkResult result;
  result.links.reserve(candidates.size());
  for (const auto& list : candidates) {
    MentionLink link;
    link.candidates_considered = list.size();
    for (const auto& c : list) {
      const auto it = scores.find(c.entity);
      const double s = it == scores.end() ? 0.0
                       : algorithm == Algorithm::hits ? it->second.authority
                                                      : it->second.pagerank;
      if (!link.chosen || s > link.score || (s == link.score && c.entity < *link.chosen)) {
        link.chosen = c.entity;
        link.score = s;
      }
    }
    result.links.push_back(std::move(link));
  }
  return result;
}

}  // namespace entlink
