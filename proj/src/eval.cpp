#include "entlink/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "entlink/properties.hpp"

namespace entlink {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t at = 0;
  while (true) {
    const auto tab = line.find('\t', at);
    fields.push_back(line.substr(at, tab == std::string_view::npos ? std::string_view::npos : tab - at));
    if (tab == std::string_view::npos) return fields;
    at = tab + 1;
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::size_t parse_count(std::string_view field, std::size_t line_no, const char* what) {
  try {
    return static_cast<std::size_t>(parse_int_value(what, std::string(field)));
  } catch (const InvalidValue&) {
    throw EvalInputError("gold line " + std::to_string(line_no) + ": bad " + what + " '" + std::string(field) + "'");
  }
}

std::string ratio(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << v;
  return out.str();
}

}  // namespace

std::map<std::string, std::string> parse_documents_tsv(std::istream& in) {
  std::map<std::string, std::string> docs;
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    const std::string_view line = strip_cr(raw);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0)
      throw EvalInputError("documents line " + std::to_string(line_no) + ": expected doc_id TAB text");
    if (!docs.emplace(std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))).second)
      throw EvalInputError("documents line " + std::to_string(line_no) + ": duplicate id");
  }
  return docs;
}

std::vector<GoldRecord> parse_gold_tsv(std::istream& in) {
  std::vector<GoldRecord> records;
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    const std::string_view line = strip_cr(raw);
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() != 5) throw EvalInputError("gold line " + std::to_string(line_no) + ": expected 5 fields");
    const std::string iri(f[4]);
    if (!Iri::is_valid(iri)) throw EvalInputError("gold line " + std::to_string(line_no) + ": bad IRI '" + iri + "'");
    records.push_back(GoldRecord{std::string(f[0]),
                                 Mention{parse_count(f[1], line_no, "start"), parse_count(f[2], line_no, "length"),
                                         std::string(f[3])},
                                 Iri(iri)});
  }
  return records;
}

EvalReport summarize(std::vector<DocumentCounts> documents) {
  std::sort(documents.begin(), documents.end(),
            [](const DocumentCounts& a, const DocumentCounts& b) { return a.doc_id < b.doc_id; });
  EvalReport r;
  for (const auto& d : documents) {
    r.correct += d.correct;
    r.predicted += d.predicted;
    r.gold += d.gold;
  }
  r.precision = r.predicted ? static_cast<double>(r.correct) / static_cast<double>(r.predicted) : 0.0;
  r.recall = r.gold ? static_cast<double>(r.correct) / static_cast<double>(r.gold) : 0.0;
  r.f1 = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  r.documents = std::move(documents);
  return r;
}

EvalReport evaluate(const Linker& linker, const std::map<std::string, std::string>& documents,
                    const std::vector<GoldRecord>& gold, const LinkerConfig& cfg) {
  std::map<std::string, std::vector<const GoldRecord*>> by_doc;
  for (const auto& g : gold) {
    if (!documents.contains(g.doc_id)) throw EvalInputError("gold references unknown document '" + g.doc_id + "'");
    by_doc[g.doc_id].push_back(&g);
  }

  struct Job {
    Document doc;
    std::vector<Iri> expected;  // aligned with doc.mentions
  };
  std::vector<std::string> ids;
  std::vector<Job> jobs;
  for (auto& [id, records] : by_doc) {
    std::sort(records.begin(), records.end(), [](const GoldRecord* a, const GoldRecord* b) {
      return a->mention.start < b->mention.start;
    });
    std::vector<Span> spans;
    for (const auto* g : records) spans.emplace_back(g->mention.start, g->mention.length);
    Job job;
    try {
      job.doc = parse_spans_payload(documents.at(id), spans);
    } catch (const TextInputError& e) {
      throw EvalInputError("document '" + id + "': " + e.what());
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (job.doc.mentions[i].surface != records[i]->mention.surface)
        throw EvalInputError("document '" + id + "': span " + std::to_string(records[i]->mention.start) + "+" +
                             std::to_string(records[i]->mention.length) + " is '" + job.doc.mentions[i].surface +
                             "', gold says '" + records[i]->mention.surface + "'");
      job.expected.push_back(linker.bundle().resolve(records[i]->gold));
    }
    ids.push_back(id);
    jobs.push_back(std::move(job));
  }
  for (const auto& [id, _] : documents) {
    if (by_doc.contains(id)) continue;
    ids.push_back(id);
    jobs.emplace_back();
  }

  std::vector<DocumentCounts> counts(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    DocumentCounts& c = counts[static_cast<std::size_t>(i)];
    c.gold = job.expected.size();
    if (job.doc.mentions.empty()) continue;
    const LinkResult result = linker.link(job.doc, cfg).result;
    for (std::size_t m = 0; m < job.expected.size(); ++m) {
      const auto& chosen = result.links[m].chosen;
      if (!chosen) continue;
      ++c.predicted;
      if (linker.bundle().resolve(*chosen) == job.expected[m]) ++c.correct;
    }
  }
  for (std::size_t i = 0; i < ids.size(); ++i) counts[i].doc_id = ids[i];
  return summarize(std::move(counts));
}

std::string render_report_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  j["correct"] = report.correct;
  j["predicted"] = report.predicted;
  j["gold"] = report.gold;
  j["documents"] = nlohmann::ordered_json::array();
  for (const auto& d : report.documents) {
    nlohmann::ordered_json doc;
    doc["id"] = d.doc_id;
    doc["correct"] = d.correct;
    doc["predicted"] = d.predicted;
    doc["gold"] = d.gold;
    j["documents"].push_back(std::move(doc));
  }
  return j.dump();
}

std::string render_report_table(const EvalReport& report) {
  std::size_t id_width = 8;
  for (const auto& d : report.documents) id_width = std::max(id_width, d.doc_id.size());

  std::ostringstream out;
  const auto row = [&](std::string_view id, const std::string& correct, const std::string& predicted,
                       const std::string& gold) {
    out << std::left << std::setw(static_cast<int>(id_width)) << id << std::right << "  " << std::setw(9) << correct
        << "  " << std::setw(9) << predicted << "  " << std::setw(9) << gold << '\n';
  };
  row("document", "correct", "predicted", "gold");
  for (const auto& d : report.documents)
    row(d.doc_id, std::to_string(d.correct), std::to_string(d.predicted), std::to_string(d.gold));
  row("total", std::to_string(report.correct), std::to_string(report.predicted), std::to_string(report.gold));
  out << '\n'
      << "precision  " << ratio(report.precision) << '\n'
      << "recall     " << ratio(report.recall) << '\n'
      << "f1         " << ratio(report.f1) << '\n';
  return out.str();
}

}  // namespace entlink
