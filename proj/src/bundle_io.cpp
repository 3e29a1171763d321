#include "entlink/bundle_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <system_error>

namespace entlink {

namespace fs = std::filesystem;

namespace {

std::string escape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string join_words(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out.push_back(' ');
    out += item;
  }
  return out;
}

std::vector<std::string> split_list_words(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    const auto space = s.find(' ', start);
    const auto end = space == std::string::npos ? s.size() : space;
    if (end > start) out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

// Lines keyed by their escaped first field; sorted by (key, rest) on write.
class RecordWriter {
 public:
  void add(std::string_view key, std::vector<std::string> values = {}) {
    std::string rest;
    for (const auto& v : values) {
      rest.push_back('\t');
      rest += escape_field(v);
    }
    records_.emplace_back(escape_field(key), std::move(rest));
  }

  std::size_t size() const noexcept { return records_.size(); }

  void write(const fs::path& path) {
    std::sort(records_.begin(), records_.end());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& [key, rest] : records_) out << key << rest << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
  }

 private:
  std::vector<std::pair<std::string, std::string>> records_;
};

class RecordReader {
 public:
  RecordReader(const fs::path& dir, std::string file) : file_(std::move(file)) {
    const fs::path path = dir / file_;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorruptBundle(file_, "missing or unreadable");
    std::string line;
    while (std::getline(in, line)) lines_.push_back(std::move(line));
  }

  // Calls fn(fields) per record; enforces byte-order keys and the field-count
  // rule. `unique_keys` requires strictly increasing keys.
  void each(std::size_t min_fields, bool unique_keys, const std::function<void(std::vector<std::string>&)>& fn) {
    std::string previous_key;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      line_ = i + 1;
      const std::string& raw = lines_[i];
      const std::string raw_key = raw.substr(0, raw.find('\t'));
      if (i > 0 && (unique_keys ? raw_key <= previous_key : raw_key < previous_key)) fail("keys out of order");
      previous_key = raw_key;
      auto fields = split(raw);
      if (fields.size() < min_fields) fail("expected at least " + std::to_string(min_fields) + " fields");
      fn(fields);
    }
  }

  std::size_t size() const noexcept { return lines_.size(); }

  [[noreturn]] void fail(const std::string& reason) const {
    throw CorruptBundle(file_, "line " + std::to_string(line_) + ": " + reason);
  }

  Iri iri(const std::string& s) const {
    if (!Iri::is_valid(s)) fail("invalid IRI '" + s + "'");
    return Iri(s);
  }

  double real(const std::string& s) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) fail("bad number '" + s + "'");
    return v;
  }

  unsigned long long count(const std::string& s) const {
    unsigned long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) fail("bad count '" + s + "'");
    return v;
  }

 private:
  std::vector<std::string> split(const std::string& raw) const {
    std::vector<std::string> fields(1);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const char c = raw[i];
      if (c == '\t') {
        fields.emplace_back();
      } else if (c == '\\') {
        if (++i >= raw.size()) fail("dangling escape");
        switch (raw[i]) {
          case '\\': fields.back().push_back('\\'); break;
          case 't': fields.back().push_back('\t'); break;
          case 'n': fields.back().push_back('\n'); break;
          case 'r': fields.back().push_back('\r'); break;
          default: fail(std::string("invalid escape \\") + raw[i]);
        }
      } else {
        fields.back().push_back(c);
      }
    }
    return fields;
  }

  std::string file_;
  std::vector<std::string> lines_;
  std::size_t line_ = 0;
};

void write_iri_map(const std::map<std::string, IriSet>& index, const fs::path& path, std::size_t& count) {
  RecordWriter w;
  for (const auto& [key, iris] : index) {
    std::vector<std::string> values;
    for (const auto& iri : iris) values.push_back(iri.str());
    w.add(key, std::move(values));
  }
  count = w.size();
  w.write(path);
}

std::map<std::string, IriSet> read_iri_map(RecordReader& r) {
  std::map<std::string, IriSet> index;
  r.each(2, true, [&](std::vector<std::string>& f) {
    auto& set = index[f[0]];
    for (std::size_t i = 1; i < f.size(); ++i) set.insert(r.iri(f[i]));
  });
  return index;
}

}  // namespace

VersionMismatch::VersionMismatch(int found, int expected)
    : std::runtime_error("bundle format version " + std::to_string(found) + ", reader expects " +
                         std::to_string(expected)),
      found_(found),
      expected_(expected) {}

CorruptBundle::CorruptBundle(std::string file, const std::string& reason)
    : std::runtime_error("corrupt bundle file " + file + ": " + reason), file_(std::move(file)) {}

void persist_bundle(const IndexBundle& bundle, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec || !fs::is_directory(directory)) throw std::runtime_error("cannot create bundle directory " + directory.string());

  std::map<std::string, std::string> counts;
  std::size_t n = 0;

  write_iri_map(bundle.surface, directory / "surface.idx", n);
  counts["count.surface"] = std::to_string(n);
  write_iri_map(bundle.persons, directory / "persons.idx", n);
  counts["count.persons"] = std::to_string(n);
  write_iri_map(bundle.rare, directory / "rare.idx", n);
  counts["count.rare"] = std::to_string(n);

  {
    RecordWriter w;
    for (const auto& [key, expansions] : bundle.acronyms)
      w.add(key, std::vector<std::string>(expansions.begin(), expansions.end()));
    counts["count.acronyms"] = std::to_string(w.size());
    w.write(directory / "acronyms.idx");
  }
  {
    RecordWriter w;
    for (const auto& [token, postings] : bundle.context.postings) {
      std::vector<std::string> values;
      for (const auto& p : postings) {
        values.push_back(p.entity.str());
        values.push_back(std::to_string(p.term_frequency));
      }
      w.add(token, std::move(values));
    }
    counts["count.context"] = std::to_string(w.size());
    w.write(directory / "context.idx");
  }
  {
    RecordWriter w;
    for (const auto& [iri, score] : bundle.popularity.scores) w.add(iri.str(), {format_real(score)});
    counts["count.popularity"] = std::to_string(w.size());
    w.write(directory / "popularity.idx");
  }
  {
    RecordWriter w;
    for (const auto& [src, edges] : bundle.graph)
      for (const auto& e : edges) w.add(src.str(), {e.predicate.str(), e.target.str()});
    for (const auto& [iri, types] : bundle.types)
      for (const auto& t : types) w.add(iri.str(), {bundle.meta.type_predicate, t.str()});
    for (const auto& [iri, target] : bundle.redirects) w.add(iri.str(), {bundle.meta.redirect_predicate, target.str()});
    counts["count.graph"] = std::to_string(w.size());
    w.write(directory / "graph.idx");
  }

  RecordWriter meta;
  const BundleMeta& m = bundle.meta;
  meta.add("format_version", {std::to_string(m.format_version)});
  meta.add("language", {m.language});
  meta.add("kb_name", {m.kb_name});
  meta.add("build_timestamp", {std::to_string(m.build_timestamp)});
  meta.add("entity_count", {std::to_string(m.entity_count)});
  meta.add("popularity_mode", {to_string(bundle.popularity.mode)});
  meta.add("predicate.type", {m.type_predicate});
  meta.add("predicate.redirect", {m.redirect_predicate});
  meta.add("type.person", {join_words(m.classes.person)});
  meta.add("type.place", {join_words(m.classes.place)});
  meta.add("type.organization", {join_words(m.classes.organization)});
  for (const auto& [key, value] : counts) meta.add(key, {value});
  meta.write(directory / "meta.txt");
}

IndexBundle load_bundle(const fs::path& directory, int expected_version) {
  IndexBundle bundle;
  std::map<std::string, std::string> meta;
  {
    RecordReader r(directory, "meta.txt");
    r.each(2, true, [&](std::vector<std::string>& f) { meta[f[0]] = f[1]; });
    const auto need = [&](const std::string& key) -> const std::string& {
      const auto it = meta.find(key);
      if (it == meta.end()) throw CorruptBundle("meta.txt", "missing key " + key);
      return it->second;
    };
    const auto version = static_cast<int>(r.count(need("format_version")));
    if (version != expected_version) throw VersionMismatch(version, expected_version);

    BundleMeta& m = bundle.meta;
    m.format_version = version;
    m.language = need("language");
    m.kb_name = need("kb_name");
    const std::string& ts = need("build_timestamp");
    const auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), m.build_timestamp);
    if (ts.empty() || ec != std::errc() || ptr != ts.data() + ts.size())
      throw CorruptBundle("meta.txt", "bad build_timestamp");
    m.entity_count = r.count(need("entity_count"));
    m.type_predicate = need("predicate.type");
    m.redirect_predicate = need("predicate.redirect");
    m.classes.person = split_list_words(need("type.person"));
    m.classes.place = split_list_words(need("type.place"));
    m.classes.organization = split_list_words(need("type.organization"));
    try {
      bundle.popularity.mode = popularity_mode_from_string("popularity_mode", need("popularity_mode"));
    } catch (const InvalidValue& e) {
      throw CorruptBundle("meta.txt", e.what());
    }
  }

  const auto check_count = [&](const RecordReader& r, const std::string& file, const std::string& key) {
    const auto it = meta.find(key);
    if (it == meta.end()) throw CorruptBundle("meta.txt", "missing key " + key);
    if (std::to_string(r.size()) != it->second)
      throw CorruptBundle(file, "has " + std::to_string(r.size()) + " records, meta.txt says " + it->second);
  };

  {
    RecordReader r(directory, "surface.idx");
    check_count(r, "surface.idx", "count.surface");
    bundle.surface = read_iri_map(r);
  }
  {
    RecordReader r(directory, "persons.idx");
    check_count(r, "persons.idx", "count.persons");
    bundle.persons = read_iri_map(r);
  }
  {
    RecordReader r(directory, "rare.idx");
    check_count(r, "rare.idx", "count.rare");
    bundle.rare = read_iri_map(r);
  }
  {
    RecordReader r(directory, "acronyms.idx");
    check_count(r, "acronyms.idx", "count.acronyms");
    r.each(2, true, [&](std::vector<std::string>& f) {
      auto& set = bundle.acronyms[f[0]];
      for (std::size_t i = 1; i < f.size(); ++i) set.insert(std::move(f[i]));
    });
  }
  {
    RecordReader r(directory, "context.idx");
    check_count(r, "context.idx", "count.context");
    r.each(3, true, [&](std::vector<std::string>& f) {
      if (f.size() % 2 == 0) r.fail("postings must be iri/tf pairs");
      auto& list = bundle.context.postings[f[0]];
      for (std::size_t i = 1; i + 1 < f.size(); i += 2) {
        const auto tf = r.count(f[i + 1]);
        if (tf == 0 || tf > 0xffffffffULL) r.fail("term frequency out of range");
        list.push_back(Posting{r.iri(f[i]), static_cast<std::uint32_t>(tf)});
        bundle.context.totals[list.back().entity] += tf;
      }
      if (!std::is_sorted(list.begin(), list.end())) r.fail("postings not sorted by entity");
    });
  }
  {
    RecordReader r(directory, "popularity.idx");
    check_count(r, "popularity.idx", "count.popularity");
    r.each(2, true, [&](std::vector<std::string>& f) {
      const double score = r.real(f[1]);
      if (!(score >= 0.0)) r.fail("negative popularity");
      bundle.popularity.scores.emplace(r.iri(f[0]), score);
    });
  }
  {
    RecordReader r(directory, "graph.idx");
    check_count(r, "graph.idx", "count.graph");
    r.each(3, false, [&](std::vector<std::string>& f) {
      if (f.size() != 3) r.fail("expected subject, predicate, object");
      Iri s = r.iri(f[0]);
      Iri o = r.iri(f[2]);
      if (f[1] == bundle.meta.type_predicate) {
        bundle.types[s].insert(std::move(o));
      } else if (f[1] == bundle.meta.redirect_predicate) {
        if (!bundle.redirects.emplace(std::move(s), std::move(o)).second) r.fail("duplicate redirect");
      } else {
        bundle.graph[s].insert(Edge{r.iri(f[1]), std::move(o)});
      }
    });
  }
  return bundle;
}

}  // namespace entlink
