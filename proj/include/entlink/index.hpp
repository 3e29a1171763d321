#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "entlink/kb.hpp"
#include "entlink/properties.hpp"

namespace entlink {

using IriSet = std::set<Iri>;

// normalized surface -> entities carrying that label
using SurfaceFormIndex = std::map<std::string, IriSet>;
// normalized name variant -> person entities
using PersonNameIndex = std::map<std::string, IriSet>;
// normalized redirect-source / disambiguation-page label -> resolved entities
using RareReferenceIndex = std::map<std::string, IriSet>;
// uppercase acronym (case-sensitive) -> expansion strings
using AcronymIndex = std::map<std::string, std::set<std::string>>;

struct Posting {
  Iri entity;
  std::uint32_t term_frequency = 0;

  auto operator<=>(const Posting&) const = default;
};

struct ContextIndex {
  std::map<std::string, std::vector<Posting>> postings;  // each list sorted by entity
  std::map<Iri, std::uint64_t> totals;                   // sum of term frequencies per entity

  bool operator==(const ContextIndex&) const = default;
};

enum class PopularityMode { frequency, pagerank };

std::string to_string(PopularityMode mode);
PopularityMode popularity_mode_from_string(const std::string& key, const std::string& value);

struct PopularityTable {
  PopularityMode mode = PopularityMode::pagerank;
  std::map<Iri, double> scores;

  double score_of(const Iri& iri) const;
  bool operator==(const PopularityTable&) const = default;
};

// Type IRIs that count as Person / Place / Organization for candidate
// filtering and for the person-name index.
struct TypeClasses {
  std::vector<std::string> person{"dbo:Person"};
  std::vector<std::string> place{"dbo:Place"};
  std::vector<std::string> organization{"dbo:Organisation"};

  bool is_person(const IriSet& types) const;
  bool is_core_type(const IriSet& types) const;
  bool operator==(const TypeClasses&) const = default;
};

struct IndexConfig {
  PredicateMap predicates;
  TypeClasses classes;
  std::vector<std::string> disambiguation_predicates{"dbo:wikiPageDisambiguates"};
  std::string abstract_predicate{"dbo:abstract"};
  std::vector<std::pair<std::string, std::string>> acronym_seed;
  PopularityMode popularity_mode = PopularityMode::pagerank;
  double damping = 0.85;
  int iterations = 50;
  std::optional<std::int64_t> build_timestamp;  // seconds since epoch; now when absent
  std::string language{"en"};
  std::string name;
};

// Recognised keys: label.predicates, type.predicate, redirect.predicate,
// disambiguation.predicates, abstract.predicate, type.person, type.place,
// type.organization, acronym.seed (path, relative to base_dir),
// popularity.mode, popularity.damping, popularity.iterations, language, name.
IndexConfig index_config_from_properties(const Properties& props, const std::filesystem::path& base_dir);

/// TAB-separated acronym -> expansion lines. Throws InvalidValue on bad keys.
std::vector<std::pair<std::string, std::string>> load_acronym_seed(const std::filesystem::path& path);

inline constexpr int kBundleFormatVersion = 2;

struct BundleMeta {
  int format_version = kBundleFormatVersion;
  std::string language;
  std::string kb_name;
  std::int64_t build_timestamp = 0;
  std::size_t entity_count = 0;
  std::string type_predicate{"rdf:type"};
  std::string redirect_predicate{"dbo:wikiPageRedirects"};
  TypeClasses classes;

  bool operator==(const BundleMeta&) const = default;
};

struct IndexBundle {
  BundleMeta meta;
  SurfaceFormIndex surface;
  PersonNameIndex persons;
  RareReferenceIndex rare;
  AcronymIndex acronyms;
  ContextIndex context;
  PopularityTable popularity;
  OutEdgeMap graph;
  std::map<Iri, IriSet> types;
  std::map<Iri, Iri> redirects;  // as stored in the KB, unresolved

  /// Follows redirect chains; cycles leave the input unchanged.
  Iri resolve(const Iri& iri) const;
  const IriSet& types_of(const Iri& iri) const;

  bool operator==(const IndexBundle&) const = default;
};

IndexBundle build_indices(const KnowledgeBase& kb, const IndexConfig& config);

// frequency: in-edge count per node (parallel edges with different predicates
// count separately). pagerank: power iteration over the node set with uniform
// teleport and dangling mass spread uniformly.
PopularityTable compute_popularity(const std::vector<Iri>& nodes, const OutEdgeMap& edges, PopularityMode mode,
                                   double damping, int iterations);

// Person-name variants of one label: full name, "last first", last name,
// first initial + last name. Single-token names only yield the full name.
std::vector<std::string> person_name_variants(std::string_view label);

// "Rio (disambiguation)" -> "Rio"
std::string strip_trailing_qualifier(std::string_view label);

}  // namespace entlink
