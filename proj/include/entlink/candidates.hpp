#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "entlink/index.hpp"
#include "entlink/kernels/ngram.hpp"
#include "entlink/linker_config.hpp"
#include "entlink/text_input.hpp"

namespace entlink {

enum class CandidateSource { direct, rare, person, expanded, acronym, context };

std::string to_string(CandidateSource source);

struct Candidate {
  std::size_t mention_index = 0;
  Iri entity;
  std::string matched_label;
  double sim = 0.0;
  double popularity = 0.0;
  CandidateSource source = CandidateSource::direct;

  bool operator==(const Candidate&) const = default;
};

using CandidateLists = std::vector<std::vector<Candidate>>;

/// Term counts of a document's word tokens.
using TokenBag = std::map<std::string, std::uint32_t>;

TokenBag token_bag(std::string_view text);

// Overlap of padded character n-gram sets of two normalized strings,
// 2|A∩B| / (|A|+|B|). Requires n >= 2.
double ngram_similarity(std::string_view a, std::string_view b, int n);

// mention index -> surface of the longest other mention that contains it on
// token boundaries (ties: earliest mention). Mentions without such a
// superstring are absent from the result.
std::map<std::size_t, std::string> heuristic_expansion(const std::vector<std::string>& surfaces);

/// Case-sensitive exact match of the raw surface against acronym keys.
std::set<std::string> acronym_lookup(std::string_view surface, const AcronymIndex& index);

// Retrieval over one immutable bundle. Owns lazily-built n-gram key indices,
// one per gram size, shared by concurrent callers.
class CandidateGenerator {
 public:
  explicit CandidateGenerator(const IndexBundle& bundle);

  CandidateLists generate(const Document& doc, const LinkerConfig& cfg) const;

  // Entities whose context postings share a token with `surface`, ranked by
  // cosine between `doc_tokens` and their context term counts.
  std::vector<Candidate> context_search(std::string_view surface, const TokenBag& doc_tokens,
                                        std::size_t max_candidates) const;

  /// Surface/person/rare keys whose similarity to `normalized` is >= threshold.
  std::vector<std::string> fuzzy_keys(std::string_view normalized, int n, double threshold) const;

  /// Every key the fuzzy step can return, sorted.
  const std::vector<std::string>& lookup_keys() const noexcept { return keys_; }

 private:
  const kernels::NgramKeyIndex& key_index(int n) const;

  const IndexBundle& bundle_;
  std::vector<std::string> keys_;
  std::vector<std::u32string> wide_keys_;
  std::map<Iri, double> context_norms_;

  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::unique_ptr<const kernels::NgramKeyIndex>> key_indices_;
};

// Convenience wrappers that build a throwaway generator.
CandidateLists generate_candidates(const Document& doc, const IndexBundle& bundle, const LinkerConfig& cfg);
std::vector<Candidate> context_search(std::string_view surface, const TokenBag& doc_tokens, const IndexBundle& bundle,
                                      std::size_t max_candidates);

}  // namespace entlink
