#pragma once

#include <cstddef>
#include <string>

namespace entlink {

enum class Algorithm { hits, pagerank };

std::string to_string(Algorithm algorithm);

// Online tuning knobs. Field order follows the service's parameter list.
struct LinkerConfig {
  bool popularity = false;  // sort candidates by popularity instead of similarity
  Algorithm algorithm = Algorithm::hits;
  bool context = false;  // context-index fallback when nothing else matched
  bool acronym = false;
  bool common_entities = false;  // keep candidates outside Person/Place/Organization
  int ngram_distance = 3;
  int depth = 2;
  bool heuristic_expansion = true;
  double sim_threshold = 0.82;
  std::size_t max_candidates = 100;
  int hits_iterations = 20;
  int pagerank_iterations = 50;
  double damping = 0.85;

  /// Throws InvalidValue naming the first out-of-range field.
  void validate() const;

  bool operator==(const LinkerConfig&) const = default;
};

}  // namespace entlink
