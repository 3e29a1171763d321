#pragma once

#include <string>

#include "entlink/candidates.hpp"
#include "entlink/disambiguation.hpp"
#include "entlink/text_input.hpp"

namespace entlink {

// [{namedEntity, start, offset, disambiguatedURL}] in mention order, "" for NIL.
std::string render_annotation_json(const Document& doc, const LinkResult& result);

// [{namedEntity, start, offset, candidates: [{url, sim, popularity, source}]}]
std::string render_candidates_json(const Document& doc, const CandidateLists& candidates);

}  // namespace entlink
