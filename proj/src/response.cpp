#include "entlink/response.hpp"

#include <json.hpp>

namespace entlink {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json mention_record(const Mention& m) {
  ordered_json rec;
  rec["namedEntity"] = m.surface;
  rec["start"] = m.start;
  rec["offset"] = m.length;
  return rec;
}

}  // namespace

std::string render_annotation_json(const Document& doc, const LinkResult& result) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
    ordered_json rec = mention_record(doc.mentions[i]);
    const auto& chosen = i < result.links.size() ? result.links[i].chosen : std::nullopt;
    rec["disambiguatedURL"] = chosen ? chosen->str() : std::string();
    out.push_back(std::move(rec));
  }
  return out.dump();
}

std::string render_candidates_json(const Document& doc, const CandidateLists& candidates) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
    ordered_json rec = mention_record(doc.mentions[i]);
    ordered_json list = ordered_json::array();
    if (i < candidates.size()) {
      for (const auto& c : candidates[i]) {
        ordered_json entry;
        entry["url"] = c.entity.str();
        entry["sim"] = c.sim;
        entry["popularity"] = c.popularity;
        entry["source"] = to_string(c.source);
        list.push_back(std::move(entry));
      }
    }
    rec["candidates"] = std::move(list);
    out.push_back(std::move(rec));
  }
  return out.dump();
}

}  // namespace entlink
