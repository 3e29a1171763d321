#pragma once

#include <memory>

#include "entlink/candidates.hpp"
#include "entlink/disambiguation.hpp"
#include "entlink/index.hpp"
#include "entlink/text_input.hpp"

namespace entlink {

struct Linking {
  CandidateLists candidates;
  DisambiguationGraph graph;
  ScoreMap scores;
  LinkResult result;
};

// The online phase over one loaded bundle: candidate generation, graph
// construction, ranking and selection. Safe to share across threads.
class Linker {
 public:
  explicit Linker(std::shared_ptr<const IndexBundle> bundle);

  const IndexBundle& bundle() const noexcept { return *bundle_; }
  const CandidateGenerator& generator() const noexcept { return generator_; }

  CandidateLists candidates(const Document& doc, const LinkerConfig& cfg) const;
  Linking link(const Document& doc, const LinkerConfig& cfg) const;

 private:
  std::shared_ptr<const IndexBundle> bundle_;
  CandidateGenerator generator_;
};

}  // namespace entlink
