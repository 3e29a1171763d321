#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "entlink/kb.hpp"
#include "entlink/linker.hpp"
#include "entlink/text_input.hpp"

namespace entlink {

class EvalInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GoldRecord {
  std::string doc_id;
  Mention mention;
  Iri gold;

  bool operator==(const GoldRecord&) const = default;
};

/// `doc_id TAB text` lines; the text runs to the end of the line.
std::map<std::string, std::string> parse_documents_tsv(std::istream& in);

/// `doc_id TAB start TAB length TAB surface TAB iri` lines.
std::vector<GoldRecord> parse_gold_tsv(std::istream& in);

struct DocumentCounts {
  std::string doc_id;
  std::size_t correct = 0;
  std::size_t predicted = 0;  // non-NIL predictions
  std::size_t gold = 0;

  bool operator==(const DocumentCounts&) const = default;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  std::vector<DocumentCounts> documents;  // sorted by doc_id

  bool operator==(const EvalReport&) const = default;
};

/// Micro P/R/F1 from summed counts; P = 0 without predictions, F1 = 0 when P + R = 0.
EvalReport summarize(std::vector<DocumentCounts> documents);

// Links every document's gold spans and scores predictions against gold after
// redirect resolution. Throws EvalInputError when a gold span is out of
// bounds, overlaps another, names an unknown document or disagrees with the
// text. Documents are linked in parallel.
EvalReport evaluate(const Linker& linker, const std::map<std::string, std::string>& documents,
                    const std::vector<GoldRecord>& gold, const LinkerConfig& cfg);

std::string render_report_json(const EvalReport& report);
std::string render_report_table(const EvalReport& report);

}  // namespace entlink
