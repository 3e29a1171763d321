#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace entlink {

/// Absolute resource identifier. Non-empty, no whitespace, no angle brackets.
class Iri {
 public:
  Iri() = default;
  /// Throws std::invalid_argument when `value` is not a valid identifier.
  explicit Iri(std::string value);

  static bool is_valid(std::string_view value) noexcept;

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

struct Literal {
  std::string text;
  std::optional<std::string> lang;

  auto operator<=>(const Literal&) const = default;
};

struct Triple {
  Iri subject;
  Iri predicate;
  std::variant<Iri, Literal> object;

  bool operator==(const Triple&) const = default;
};

struct EntityRecord {
  Iri iri;
  std::optional<std::string> preferred_label;
  std::set<std::string> alt_labels;
  std::set<Iri> types;
  std::optional<Iri> redirect_to;

  bool operator==(const EntityRecord&) const = default;
};

struct Edge {
  Iri predicate;
  Iri target;

  auto operator<=>(const Edge&) const = default;
};

struct LiteralFact {
  Iri predicate;
  Literal value;

  auto operator<=>(const LiteralFact&) const = default;
};

using OutEdgeMap = std::map<Iri, std::set<Edge>>;

// Which predicates carry labels, types and redirects. Everything else with
// an IRI object is a graph edge.
struct PredicateMap {
  std::vector<std::string> label{"rdfs:label"};
  std::string type{"rdf:type"};
  std::string redirect{"dbo:wikiPageRedirects"};

  bool is_label(const Iri& p) const;
  bool operator==(const PredicateMap&) const = default;
};

struct KnowledgeBase {
  std::map<Iri, EntityRecord> entities;
  OutEdgeMap out_edges;
  // Non-label literal triples that passed the language filter (abstracts etc.).
  std::map<Iri, std::set<LiteralFact>> literals;
  std::string language;
  std::string name;
  PredicateMap predicates;

  const EntityRecord* find(const Iri& iri) const;
  std::size_t edge_count() const;

  bool operator==(const KnowledgeBase&) const = default;
};

class MalformedLine : public std::runtime_error {
 public:
  MalformedLine(std::size_t line_number, std::string reason);
  std::size_t line_number() const noexcept { return line_number_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_number_;
  std::string reason_;
};

class DuplicateRedirect : public std::runtime_error {
 public:
  DuplicateRedirect(std::size_t line_number, const Iri& subject);
  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::size_t line_number_;
};

// One line of the ingestion format:
//   <subject> <predicate> <object>
//   <subject> <predicate> "literal text"@lang
// Blank lines and lines starting with '#' yield nullopt. A trailing CR and a
// trailing N-Triples "." are tolerated. Only \" and \\ escapes are accepted.
std::optional<Triple> parse_triple_line(std::string_view line, std::size_t line_number = 0);

/// True when a literal tag is acceptable for a KB in `language`.
bool language_matches(const std::optional<std::string>& literal_lang, std::string_view language);

KnowledgeBase load_kb(std::istream& source, std::string language, std::string name,
                      const PredicateMap& predicates = {});

// Ingestion lines that load_kb maps back onto an equal KnowledgeBase.
void write_kb(const KnowledgeBase& kb, std::ostream& out);
std::string format_triple(const Triple& t);

}  // namespace entlink

template <>
struct std::hash<entlink::Iri> {
  std::size_t operator()(const entlink::Iri& iri) const noexcept { return std::hash<std::string>{}(iri.str()); }
};
