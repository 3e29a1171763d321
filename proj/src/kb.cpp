#include "entlink/kb.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace entlink {

namespace {

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

bool ascii_iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           const auto lx = static_cast<char>(x >= 'A' && x <= 'Z' ? x - 'A' + 'a' : x);
           const auto ly = static_cast<char>(y >= 'A' && y <= 'Z' ? y - 'A' + 'a' : y);
           return lx == ly;
         });
}

bool is_lang_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
}

using Field = std::variant<Iri, Literal>;

class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_number) : line_(line), line_number_(line_number) {}

  // Collects fields until end of line. A lone "." after the third field is
  // accepted and dropped.
  std::vector<Field> fields() {
    std::vector<Field> out;
    for (;;) {
      skip_space();
      if (pos_ >= line_.size()) break;
      const char c = line_[pos_];
      if (c == '<') {
        out.emplace_back(read_iri());
      } else if (c == '"') {
        out.emplace_back(read_literal());
      } else if (c == '.' && out.size() == 3) {
        ++pos_;
        skip_space();
        if (pos_ < line_.size()) fail("unexpected text after '.'");
        break;
      } else {
        fail(std::string("unexpected character '") + c + "' at column " + std::to_string(pos_ + 1));
      }
    }
    return out;
  }

  [[noreturn]] void fail(std::string reason) const { throw MalformedLine(line_number_, std::move(reason)); }

 private:
  void skip_space() {
    while (pos_ < line_.size() && is_ascii_space(line_[pos_])) ++pos_;
  }

  Iri read_iri() {
    const std::size_t open = pos_++;
    const std::size_t close = line_.find('>', pos_);
    if (close == std::string_view::npos) fail("unterminated IRI at column " + std::to_string(open + 1));
    std::string value(line_.substr(pos_, close - pos_));
    pos_ = close + 1;
    if (value.empty()) fail("empty IRI at column " + std::to_string(open + 1));
    if (!Iri::is_valid(value)) fail("invalid IRI <" + value + ">");
    require_separator();
    return Iri(std::move(value));
  }

  Literal read_literal() {
    const std::size_t open = pos_++;
    Literal lit;
    for (;;) {
      if (pos_ >= line_.size()) fail("unterminated literal at column " + std::to_string(open + 1));
      const char c = line_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= line_.size()) fail("dangling escape at end of line");
        const char e = line_[pos_++];
        if (e != '"' && e != '\\') fail(std::string("invalid escape \\") + e);
        lit.text.push_back(e);
      } else {
        lit.text.push_back(c);
      }
    }
    if (pos_ < line_.size() && line_[pos_] == '@') {
      const std::size_t start = ++pos_;
      while (pos_ < line_.size() && is_lang_char(line_[pos_])) ++pos_;
      if (pos_ == start) fail("empty language tag");
      lit.lang = std::string(line_.substr(start, pos_ - start));
    }
    require_separator();
    return lit;
  }

  void require_separator() const {
    if (pos_ < line_.size() && !is_ascii_space(line_[pos_]))
      fail("missing whitespace after field at column " + std::to_string(pos_ + 1));
  }

  std::string_view line_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

std::string escape_literal(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

EntityRecord& ensure_entity(KnowledgeBase& kb, const Iri& iri) {
  auto [it, inserted] = kb.entities.try_emplace(iri);
  if (inserted) it->second.iri = iri;
  return it->second;
}

}  // namespace

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_valid(value_)) throw std::invalid_argument("invalid IRI: '" + value_ + "'");
}

bool Iri::is_valid(std::string_view value) noexcept {
  if (value.empty()) return false;
  return std::none_of(value.begin(), value.end(),
                      [](char c) { return is_ascii_space(c) || c == '<' || c == '>'; });
}

bool PredicateMap::is_label(const Iri& p) const {
  return std::find(label.begin(), label.end(), p.str()) != label.end();
}

const EntityRecord* KnowledgeBase::find(const Iri& iri) const {
  const auto it = entities.find(iri);
  return it == entities.end() ? nullptr : &it->second;
}

std::size_t KnowledgeBase::edge_count() const {
  std::size_t n = 0;
  for (const auto& [_, edges] : out_edges) n += edges.size();
  return n;
}

MalformedLine::MalformedLine(std::size_t line_number, std::string reason)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + reason),
      line_number_(line_number),
      reason_(std::move(reason)) {}

DuplicateRedirect::DuplicateRedirect(std::size_t line_number, const Iri& subject)
    : std::runtime_error("line " + std::to_string(line_number) + ": second redirect target for <" + subject.str() +
                         ">"),
      line_number_(line_number) {}

std::optional<Triple> parse_triple_line(std::string_view line, std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (!line.empty() && line.front() == '#') return std::nullopt;
  if (std::all_of(line.begin(), line.end(), is_ascii_space)) return std::nullopt;

  LineScanner scanner(line, line_number);
  auto fields = scanner.fields();
  if (fields.size() != 3) scanner.fail("expected 3 fields, found " + std::to_string(fields.size()));
  if (!std::holds_alternative<Iri>(fields[0])) scanner.fail("subject must be an IRI");
  if (!std::holds_alternative<Iri>(fields[1])) scanner.fail("predicate must be an IRI");

  return Triple{std::get<Iri>(std::move(fields[0])), std::get<Iri>(std::move(fields[1])), std::move(fields[2])};
}

bool language_matches(const std::optional<std::string>& literal_lang, std::string_view language) {
  if (!literal_lang || language.empty()) return true;
  const std::string_view tag = *literal_lang;
  if (ascii_iequals(tag, language)) return true;
  const auto dash = tag.find('-');
  return dash != std::string_view::npos && ascii_iequals(tag.substr(0, dash), language);
}

KnowledgeBase load_kb(std::istream& source, std::string language, std::string name, const PredicateMap& predicates) {
  KnowledgeBase kb;
  kb.language = std::move(language);
  kb.name = std::move(name);
  kb.predicates = predicates;

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(source, line)) {
    ++line_number;
    auto triple = parse_triple_line(line, line_number);
    if (!triple) continue;
    const Iri& s = triple->subject;
    const Iri& p = triple->predicate;

    if (auto* lit = std::get_if<Literal>(&triple->object)) {
      if (!language_matches(lit->lang, kb.language)) continue;
      EntityRecord& rec = ensure_entity(kb, s);
      if (predicates.is_label(p)) {
        rec.alt_labels.insert(lit->text);
      } else {
        kb.literals[s].insert(LiteralFact{p, std::move(*lit)});
      }
      continue;
    }

    const Iri& o = std::get<Iri>(triple->object);
    if (p.str() == predicates.type) {
      ensure_entity(kb, s).types.insert(o);
    } else if (p.str() == predicates.redirect) {
      if (o == s) continue;
      EntityRecord& rec = ensure_entity(kb, s);
      if (rec.redirect_to && *rec.redirect_to != o) throw DuplicateRedirect(line_number, s);
      rec.redirect_to = o;
      ensure_entity(kb, o);
    } else {
      ensure_entity(kb, s);
      ensure_entity(kb, o);
      kb.out_edges[s].insert(Edge{p, o});
    }
  }

  for (auto& [_, rec] : kb.entities) {
    if (!rec.alt_labels.empty()) rec.preferred_label = *rec.alt_labels.begin();
  }
  return kb;
}

std::string format_triple(const Triple& t) {
  std::string out = "<" + t.subject.str() + "> <" + t.predicate.str() + "> ";
  if (const auto* iri = std::get_if<Iri>(&t.object)) {
    out += "<" + iri->str() + ">";
  } else {
    const auto& lit = std::get<Literal>(t.object);
    out += "\"" + escape_literal(lit.text) + "\"";
    if (lit.lang) out += "@" + *lit.lang;
  }
  return out;
}

void write_kb(const KnowledgeBase& kb, std::ostream& out) {
  const Iri label_predicate(kb.predicates.label.empty() ? std::string("rdfs:label") : kb.predicates.label.front());
  std::optional<std::string> lang;
  if (!kb.language.empty()) lang = kb.language;

  for (const auto& [iri, rec] : kb.entities) {
    for (const auto& label : rec.alt_labels)
      out << format_triple({iri, label_predicate, Literal{label, lang}}) << '\n';
    for (const auto& type : rec.types) out << format_triple({iri, Iri(kb.predicates.type), type}) << '\n';
    if (rec.redirect_to) out << format_triple({iri, Iri(kb.predicates.redirect), *rec.redirect_to}) << '\n';
  }
  for (const auto& [iri, edges] : kb.out_edges)
    for (const auto& e : edges) out << format_triple({iri, e.predicate, e.target}) << '\n';
  for (const auto& [iri, facts] : kb.literals)
    for (const auto& f : facts) out << format_triple({iri, f.predicate, f.value}) << '\n';
}

}  // namespace entlink
