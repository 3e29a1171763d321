#include "entlink/index.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <unordered_map>

#include "entlink/kernels/csr_graph.hpp"
#include "entlink/kernels/rank.hpp"
#include "entlink/text.hpp"

namespace entlink {

namespace {

const IriSet kNoTypes;

bool intersects(const IriSet& types, const std::vector<std::string>& classes) {
  return std::any_of(classes.begin(), classes.end(),
                     [&](const std::string& c) { return Iri::is_valid(c) && types.contains(Iri(c)); });
}

std::vector<std::string> split_tokens(const std::string& normalized) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < normalized.size()) {
    const auto space = normalized.find(' ', start);
    const auto end = space == std::string::npos ? normalized.size() : space;
    tokens.push_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

std::string join(std::vector<std::string>::const_iterator first, std::vector<std::string>::const_iterator last) {
  std::string out;
  for (auto it = first; it != last; ++it) {
    if (!out.empty()) out.push_back(' ');
    out += *it;
  }
  return out;
}

// Redirect resolution over the KB records; chains are followed and a cycle
// leaves the starting IRI in place.
Iri resolve_in_kb(const KnowledgeBase& kb, const Iri& start) {
  Iri current = start;
  std::set<Iri> seen{start};
  for (;;) {
    const EntityRecord* rec = kb.find(current);
    if (!rec || !rec->redirect_to) return current;
    if (!seen.insert(*rec->redirect_to).second) return start;
    current = *rec->redirect_to;
  }
}

void add(std::map<std::string, IriSet>& index, const std::string& key, const Iri& iri) {
  if (!key.empty()) index[key].insert(iri);
}

SurfaceFormIndex build_surface(const KnowledgeBase& kb) {
  SurfaceFormIndex surface;
  for (const auto& [iri, rec] : kb.entities) {
    if (rec.redirect_to) continue;
    for (const auto& label : rec.alt_labels) add(surface, normalize_surface_form(label), iri);
  }
  return surface;
}

PersonNameIndex build_persons(const KnowledgeBase& kb, const TypeClasses& classes) {
  PersonNameIndex persons;
  for (const auto& [iri, rec] : kb.entities) {
    if (rec.redirect_to || !classes.is_person(rec.types)) continue;
    for (const auto& label : rec.alt_labels)
      for (const auto& variant : person_name_variants(label)) add(persons, variant, iri);
  }
  return persons;
}

RareReferenceIndex build_rare(const KnowledgeBase& kb, const IndexConfig& config) {
  RareReferenceIndex rare;
  for (const auto& [iri, rec] : kb.entities) {
    if (!rec.redirect_to) continue;
    const Iri target = resolve_in_kb(kb, iri);
    if (target == iri) continue;
    for (const auto& label : rec.alt_labels) add(rare, normalize_surface_form(label), target);
  }

  for (const auto& [page, edges] : kb.out_edges) {
    const EntityRecord* rec = kb.find(page);
    if (!rec || rec->alt_labels.empty()) continue;
    for (const auto& edge : edges) {
      const auto& preds = config.disambiguation_predicates;
      if (std::find(preds.begin(), preds.end(), edge.predicate.str()) == preds.end()) continue;
      const Iri member = resolve_in_kb(kb, edge.target);
      for (const auto& label : rec->alt_labels)
        add(rare, normalize_surface_form(strip_trailing_qualifier(label)), member);
    }
  }
  return rare;
}

AcronymIndex build_acronyms(const KnowledgeBase& kb, const IndexConfig& config) {
  AcronymIndex acronyms;
  for (const auto& [iri, rec] : kb.entities) {
    std::set<std::string> caps;
    for (const auto& label : rec.alt_labels)
      if (is_acronym_key(label)) caps.insert(label);
    if (caps.empty()) continue;
    for (const auto& label : rec.alt_labels) {
      if (caps.contains(label)) continue;
      const std::string initials = acronym_initials(label);
      if (caps.contains(initials)) acronyms[initials].insert(label);
    }
  }
  for (const auto& [key, expansion] : config.acronym_seed) {
    if (is_acronym_key(key) && !expansion.empty()) acronyms[key].insert(expansion);
  }
  return acronyms;
}

ContextIndex build_context(const KnowledgeBase& kb, const IndexConfig& config) {
  std::map<Iri, std::map<std::string, std::uint32_t>> counts;
  for (const auto& [iri, facts] : kb.literals) {
    for (const auto& fact : facts) {
      if (fact.predicate.str() != config.abstract_predicate) continue;
      auto& bag = counts[resolve_in_kb(kb, iri)];
      for (auto& token : tokenize_words(fact.value.text)) ++bag[std::move(token)];
    }
  }

  ContextIndex context;
  for (const auto& [iri, bag] : counts) {
    for (const auto& [token, tf] : bag) {
      context.postings[token].push_back(Posting{iri, tf});
      context.totals[iri] += tf;
    }
  }
  // entities are visited in order, so each posting list is already sorted
  return context;
}

}  // namespace

std::string to_string(PopularityMode mode) { return mode == PopularityMode::pagerank ? "pagerank" : "frequency"; }

PopularityMode popularity_mode_from_string(const std::string& key, const std::string& value) {
  if (value == "pagerank") return PopularityMode::pagerank;
  if (value == "frequency") return PopularityMode::frequency;
  throw InvalidValue(key, value, "expected pagerank or frequency");
}

double PopularityTable::score_of(const Iri& iri) const {
  const auto it = scores.find(iri);
  return it == scores.end() ? 0.0 : it->second;
}

bool TypeClasses::is_person(const IriSet& types) const { return intersects(types, person); }

bool TypeClasses::is_core_type(const IriSet& types) const {
  return intersects(types, person) || intersects(types, place) || intersects(types, organization);
}

Iri IndexBundle::resolve(const Iri& iri) const {
  Iri current = iri;
  std::set<Iri> seen{iri};
  for (auto it = redirects.find(current); it != redirects.end(); it = redirects.find(current)) {
    if (!seen.insert(it->second).second) return iri;
    current = it->second;
  }
  return current;
}

const IriSet& IndexBundle::types_of(const Iri& iri) const {
  const auto it = types.find(iri);
  return it == types.end() ? kNoTypes : it->second;
}

IndexConfig index_config_from_properties(const Properties& props, const std::filesystem::path& base_dir) {
  IndexConfig cfg;
  const auto get = [&](const char* key) -> const std::string* {
    const auto it = props.find(key);
    return it == props.end() ? nullptr : &it->second;
  };
  const auto require_iri = [](const char* key, const std::string& value) {
    if (!Iri::is_valid(value)) throw InvalidValue(key, value, "not a valid IRI");
  };

  if (const auto* v = get("label.predicates")) {
    for (auto& p : split_list(*v)) {
      require_iri("label.predicates", p);
      if (std::find(cfg.predicates.label.begin(), cfg.predicates.label.end(), p) == cfg.predicates.label.end())
        cfg.predicates.label.push_back(std::move(p));
    }
  }
  if (const auto* v = get("type.predicate")) require_iri("type.predicate", cfg.predicates.type = *v);
  if (const auto* v = get("redirect.predicate")) require_iri("redirect.predicate", cfg.predicates.redirect = *v);
  if (const auto* v = get("disambiguation.predicates")) cfg.disambiguation_predicates = split_list(*v);
  if (const auto* v = get("abstract.predicate")) require_iri("abstract.predicate", cfg.abstract_predicate = *v);
  if (const auto* v = get("type.person")) cfg.classes.person = split_list(*v);
  if (const auto* v = get("type.place")) cfg.classes.place = split_list(*v);
  if (const auto* v = get("type.organization")) cfg.classes.organization = split_list(*v);
  if (const auto* v = get("popularity.mode")) cfg.popularity_mode = popularity_mode_from_string("popularity.mode", *v);
  if (const auto* v = get("popularity.damping")) {
    cfg.damping = parse_real_value("popularity.damping", *v);
    if (!(cfg.damping >= 0.0 && cfg.damping < 1.0)) throw InvalidValue("popularity.damping", *v, "must be in [0, 1)");
  }
  if (const auto* v = get("popularity.iterations")) {
    const long long it = parse_int_value("popularity.iterations", *v);
    if (it < 1 || it > 100000) throw InvalidValue("popularity.iterations", *v, "must be in [1, 100000]");
    cfg.iterations = static_cast<int>(it);
  }
  if (const auto* v = get("language")) cfg.language = *v;
  if (const auto* v = get("name")) cfg.name = *v;
  if (const auto* v = get("acronym.seed")) {
    std::filesystem::path seed(*v);
    if (seed.is_relative()) seed = base_dir / seed;
    cfg.acronym_seed = load_acronym_seed(seed);
  }
  return cfg;
}

std::vector<std::pair<std::string, std::string>> load_acronym_seed(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read acronym seed file " + path.string());
  std::vector<std::pair<std::string, std::string>> seed;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw InvalidValue("acronym.seed", line, "expected acronym<TAB>expansion");
    std::string key = line.substr(0, tab);
    std::string expansion(trim(std::string_view(line).substr(tab + 1)));
    if (!is_acronym_key(key)) throw InvalidValue("acronym.seed", key, "acronyms are 2-6 uppercase letters/digits");
    if (expansion.empty()) throw InvalidValue("acronym.seed", line, "empty expansion");
    seed.emplace_back(std::move(key), std::move(expansion));
  }
  return seed;
}

std::vector<std::string> person_name_variants(std::string_view label) {
  const std::string full = normalize_surface_form(label);
  if (full.empty()) return {};
  const auto tokens = split_tokens(full);
  std::vector<std::string> variants{full};
  if (tokens.size() >= 2) {
    const std::string& last = tokens.back();
    variants.push_back(last + " " + join(tokens.begin(), tokens.end() - 1));
    variants.push_back(last);
    const std::u32string first = decode_utf8(tokens.front());
    variants.push_back(encode_utf8(first.substr(0, 1)) + " " + last);
  }
  std::sort(variants.begin(), variants.end());
  variants.erase(std::unique(variants.begin(), variants.end()), variants.end());
  return variants;
}

std::string strip_trailing_qualifier(std::string_view label) {
  std::string_view s = trim(label);
  if (!s.empty() && s.back() == ')') {
    const auto open = s.rfind('(');
    if (open != std::string_view::npos && open > 0) s = trim(s.substr(0, open));
  }
  return std::string(s);
}

PopularityTable compute_popularity(const std::vector<Iri>& nodes, const OutEdgeMap& edges, PopularityMode mode,
                                   double damping, int iterations) {
  PopularityTable table;
  table.mode = mode;

  if (mode == PopularityMode::frequency) {
    for (const auto& n : nodes) table.scores[n] = 0.0;
    for (const auto& [_, out] : edges)
      for (const auto& e : out) table.scores[e.target] += 1.0;
    return table;
  }

  if (!(damping >= 0.0 && damping < 1.0)) throw std::invalid_argument("damping must be in [0, 1)");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");

  std::vector<Iri> ids(nodes);
  for (const auto& [src, out] : edges) {
    ids.push_back(src);
    for (const auto& e : out) ids.push_back(e.target);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::unordered_map<Iri, kernels::NodeId> index;
  index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], static_cast<kernels::NodeId>(i));

  std::vector<kernels::EdgePair> pairs;
  for (const auto& [src, out] : edges)
    for (const auto& e : out) pairs.emplace_back(index.at(src), index.at(e.target));

  const auto graph = kernels::CsrGraph::from_edges(ids.size(), pairs);
  const auto rank = kernels::pagerank_parallel(graph, {damping, iterations});
  for (std::size_t i = 0; i < ids.size(); ++i) table.scores.emplace_hint(table.scores.end(), ids[i], rank[i]);
  return table;
}

IndexBundle build_indices(const KnowledgeBase& kb, const IndexConfig& config) {
  IndexBundle bundle;
  bundle.meta.language = kb.language;
  bundle.meta.kb_name = kb.name;
  bundle.meta.entity_count = kb.entities.size();
  bundle.meta.type_predicate = kb.predicates.type;
  bundle.meta.redirect_predicate = kb.predicates.redirect;
  bundle.meta.classes = config.classes;
  bundle.meta.build_timestamp =
      config.build_timestamp.value_or(std::chrono::duration_cast<std::chrono::seconds>(
                                          std::chrono::system_clock::now().time_since_epoch())
                                          .count());

  std::vector<Iri> nodes;
  nodes.reserve(kb.entities.size());
  for (const auto& [iri, _] : kb.entities) nodes.push_back(iri);

  // sub-indices are independent reads of the immutable KB
#pragma omp parallel sections
  {
#pragma omp section
    bundle.surface = build_surface(kb);
#pragma omp section
    bundle.persons = build_persons(kb, config.classes);
#pragma omp section
    bundle.rare = build_rare(kb, config);
#pragma omp section
    bundle.acronyms = build_acronyms(kb, config);
#pragma omp section
    bundle.context = build_context(kb, config);
  }

  bundle.popularity = compute_popularity(nodes, kb.out_edges, config.popularity_mode, config.damping, config.iterations);
  bundle.graph = kb.out_edges;
  for (const auto& [iri, rec] : kb.entities) {
    if (!rec.types.empty()) bundle.types.emplace_hint(bundle.types.end(), iri, rec.types);
    if (rec.redirect_to) bundle.redirects.emplace_hint(bundle.redirects.end(), iri, *rec.redirect_to);
  }
  return bundle;
}

}  // namespace entlink
