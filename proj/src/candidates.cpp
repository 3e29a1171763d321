#include "entlink/candidates.hpp"

#include <algorithm>
#include <cmath>

#include "entlink/properties.hpp"
#include "entlink/text.hpp"

namespace entlink {

namespace {

struct IndexRoute {
  const std::map<std::string, IriSet>* index;
  CandidateSource source;
};

bool contains_on_token_boundary(std::string_view haystack, std::string_view needle) {
  if (needle.empty() || needle.size() >= haystack.size()) return false;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos; pos = haystack.find(needle, pos + 1)) {
    const auto end = pos + needle.size();
    const bool left = pos == 0 || haystack[pos - 1] == ' ';
    const bool right = end == haystack.size() || haystack[end] == ' ';
    if (left && right) return true;
  }
  return false;
}

// Keeps one candidate per entity: the higher sim wins, ties keep the first.
class CandidateSet {
 public:
  void offer(Candidate c) {
    auto [it, inserted] = by_entity_.try_emplace(c.entity, c);
    if (!inserted && c.sim > it->second.sim) it->second = std::move(c);
  }
  bool empty() const noexcept { return by_entity_.empty(); }

  std::vector<Candidate> take() {
    std::vector<Candidate> out;
    out.reserve(by_entity_.size());
    for (auto& [_, c] : by_entity_) out.push_back(std::move(c));
    return out;
  }

 private:
  std::map<Iri, Candidate> by_entity_;
};

}  // namespace

std::string to_string(Algorithm algorithm) { return algorithm == Algorithm::hits ? "hits" : "pagerank"; }

void LinkerConfig::validate() const {
  if (ngram_distance < 2) throw InvalidValue("ngramDistance", std::to_string(ngram_distance), "must be >= 2");
  if (depth < 0) throw InvalidValue("depth", std::to_string(depth), "must be >= 0");
  if (!(sim_threshold >= 0.0 && sim_threshold <= 1.0))
    throw InvalidValue("simThreshold", std::to_string(sim_threshold), "must be in [0, 1]");
  if (max_candidates < 1) throw InvalidValue("maxCandidates", std::to_string(max_candidates), "must be >= 1");
  if (hits_iterations < 1) throw InvalidValue("hitsIterations", std::to_string(hits_iterations), "must be >= 1");
  if (pagerank_iterations < 1)
    throw InvalidValue("pagerankIterations", std::to_string(pagerank_iterations), "must be >= 1");
  if (!(damping >= 0.0 && damping < 1.0)) throw InvalidValue("damping", std::to_string(damping), "must be in [0, 1)");
}

std::string to_string(CandidateSource source) {
  switch (source) {
    case CandidateSource::direct: return "direct";
    case CandidateSource::rare: return "rare";
    case CandidateSource::person: return "person";
    case CandidateSource::expanded: return "expanded";
    case CandidateSource::acronym: return "acronym";
    case CandidateSource::context: return "context";
  }
  return "direct";
}

TokenBag token_bag(std::string_view text) {
  TokenBag bag;
  for (auto& token : tokenize_words(text)) ++bag[std::move(token)];
  return bag;
}

double ngram_similarity(std::string_view a, std::string_view b, int n) {
  if (n < 2) throw std::invalid_argument("n-gram size must be >= 2");
  return kernels::dice_overlap(kernels::padded_grams(decode_utf8(a), n), kernels::padded_grams(decode_utf8(b), n));
}

std::map<std::size_t, std::string> heuristic_expansion(const std::vector<std::string>& surfaces) {
  std::vector<std::string> normalized;
  std::vector<std::size_t> lengths;
  normalized.reserve(surfaces.size());
  for (const auto& s : surfaces) {
    normalized.push_back(normalize_surface_form(s));
    lengths.push_back(code_point_count(normalized.back()));
  }

  std::map<std::size_t, std::string> expanded;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < surfaces.size(); ++j) {
      if (j == i || !contains_on_token_boundary(normalized[j], normalized[i])) continue;
      if (!best || lengths[j] > lengths[*best]) best = j;
    }
    if (best) expanded.emplace(i, surfaces[*best]);
  }
  return expanded;
}

std::set<std::string> acronym_lookup(std::string_view surface, const AcronymIndex& index) {
  const auto it = index.find(std::string(surface));
  return it == index.end() ? std::set<std::string>{} : it->second;
}

CandidateGenerator::CandidateGenerator(const IndexBundle& bundle) : bundle_(bundle) {
  for (const auto* index : {&bundle.surface, &bundle.persons, &bundle.rare})
    for (const auto& [key, _] : *index) keys_.push_back(key);
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  wide_keys_.reserve(keys_.size());
  for (const auto& key : keys_) wide_keys_.push_back(decode_utf8(key));

  for (const auto& [_, postings] : bundle.context.postings)
    for (const auto& p : postings)
      context_norms_[p.entity] += static_cast<double>(p.term_frequency) * static_cast<double>(p.term_frequency);
  for (auto& [_, norm] : context_norms_) norm = std::sqrt(norm);
}

const kernels::NgramKeyIndex& CandidateGenerator::key_index(int n) const {
  std::lock_guard lock(cache_mutex_);
  auto& slot = key_indices_[n];
  if (!slot) slot = std::make_unique<const kernels::NgramKeyIndex>(wide_keys_, n);
  return *slot;
}

std::vector<std::string> CandidateGenerator::fuzzy_keys(std::string_view normalized, int n, double threshold) const {
  std::vector<std::string> out;
  for (std::size_t k : key_index(n).search(decode_utf8(normalized), threshold)) out.push_back(keys_[k]);
  return out;
}

std::vector<Candidate> CandidateGenerator::context_search(std::string_view surface, const TokenBag& doc_tokens,
                                                          std::size_t max_candidates) const {
  const auto& postings = bundle_.context.postings;
  std::set<Iri> eligible;
  for (const auto& token : tokenize_words(surface)) {
    const auto it = postings.find(token);
    if (it == postings.end()) continue;
    for (const auto& p : it->second) eligible.insert(p.entity);
  }
  if (eligible.empty()) return {};

  double doc_norm = 0.0;
  for (const auto& [_, count] : doc_tokens) doc_norm += static_cast<double>(count) * static_cast<double>(count);
  doc_norm = std::sqrt(doc_norm);
  if (doc_norm == 0.0) return {};

  std::map<Iri, double> dot;
  for (const auto& [token, count] : doc_tokens) {
    const auto it = postings.find(token);
    if (it == postings.end()) continue;
    for (const auto& p : it->second) {
      if (eligible.contains(p.entity))
        dot[p.entity] += static_cast<double>(count) * static_cast<double>(p.term_frequency);
    }
  }

  std::vector<Candidate> out;
  for (const auto& [iri, value] : dot) {
    const auto norm = context_norms_.find(iri);
    if (value <= 0.0 || norm == context_norms_.end() || norm->second == 0.0) continue;
    Candidate c;
    c.entity = iri;
    c.matched_label = std::string(surface);
    c.sim = std::min(1.0, value / (doc_norm * norm->second));
    c.popularity = bundle_.popularity.score_of(iri);
    c.source = CandidateSource::context;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.sim != b.sim ? a.sim > b.sim : a.entity < b.entity;
  });
  if (out.size() > max_candidates) out.resize(max_candidates);
  return out;
}

CandidateLists CandidateGenerator::generate(const Document& doc, const LinkerConfig& cfg) const {
  cfg.validate();
  std::vector<std::string> surfaces;
  for (const auto& m : doc.mentions) surfaces.push_back(m.surface);
  const auto expansions = cfg.heuristic_expansion ? heuristic_expansion(surfaces) : std::map<std::size_t, std::string>{};

  const IndexRoute routes[] = {{&bundle_.surface, CandidateSource::direct},
                               {&bundle_.persons, CandidateSource::person},
                               {&bundle_.rare, CandidateSource::rare}};
  std::optional<TokenBag> doc_tokens;
  CandidateLists lists(doc.mentions.size());

  for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
    const auto exp = expansions.find(i);
    const bool expanded = exp != expansions.end();
    const std::string& raw = expanded ? exp->second : doc.mentions[i].surface;
    const std::string key = normalize_surface_form(raw);

    CandidateSet found;
    const auto offer_key = [&](const std::string& index_key, double sim) {
      for (const auto& route : routes) {
        const auto hit = route.index->find(index_key);
        if (hit == route.index->end()) continue;
        for (const auto& iri : hit->second)
          found.offer(Candidate{i, iri, index_key, sim, 0.0, expanded ? CandidateSource::expanded : route.source});
      }
    };

    offer_key(key, 1.0);
    if (found.empty() && !key.empty()) {
      for (const auto& fuzzy : fuzzy_keys(key, cfg.ngram_distance, cfg.sim_threshold))
        offer_key(fuzzy, ngram_similarity(key, fuzzy, cfg.ngram_distance));
    }
    if (cfg.acronym) {
      for (const auto& expansion : acronym_lookup(trim(raw), bundle_.acronyms)) {
        const auto hit = bundle_.surface.find(normalize_surface_form(expansion));
        if (hit == bundle_.surface.end()) continue;
        for (const auto& iri : hit->second) found.offer(Candidate{i, iri, expansion, 1.0, 0.0, CandidateSource::acronym});
      }
    }
    if (found.empty() && cfg.context) {
      if (!doc_tokens) doc_tokens = token_bag(doc.text);
      for (auto& c : context_search(raw, *doc_tokens, cfg.max_candidates)) {
        c.mention_index = i;
        found.offer(std::move(c));
      }
    }

    std::vector<Candidate> list = found.take();
    if (!cfg.common_entities) {
      std::erase_if(list, [&](const Candidate& c) {
        return !bundle_.meta.classes.is_core_type(bundle_.types_of(c.entity));
      });
    }
    for (auto& c : list) c.popularity = bundle_.popularity.score_of(c.entity);
    std::sort(list.begin(), list.end(), [&](const Candidate& a, const Candidate& b) {
      const double ka = cfg.popularity ? a.popularity : a.sim;
      const double kb = cfg.popularity ? b.popularity : b.sim;
      return ka != kb ? ka > kb : a.entity < b.entity;
    });
    if (list.size() > cfg.max_candidates) list.resize(cfg.max_candidates);
    lists[i] = std::move(list);
  }
  return lists;
}

CandidateLists generate_candidates(const Document& doc, const IndexBundle& bundle, const LinkerConfig& cfg) {
  return CandidateGenerator(bundle).generate(doc, cfg);
}

std::vector<Candidate> context_search(std::string_view surface, const TokenBag& doc_tokens, const IndexBundle& bundle,
                                      std::size_t max_candidates) {
  return CandidateGenerator(bundle).context_search(surface, doc_tokens, max_candidates);
}

}  // namespace entlink
