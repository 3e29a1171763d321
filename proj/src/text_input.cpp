#include "entlink/text_input.hpp"

#include <algorithm>
#include <optional>

#include "entlink/text.hpp"

namespace entlink {

namespace {

const std::u32string kOpen = U"<entity>";
const std::u32string kClose = U"</entity>";

bool starts_with_at(const std::u32string& s, std::size_t i, const std::u32string& pattern) {
  return s.compare(i, pattern.size(), pattern) == 0;
}

}  // namespace

UnbalancedTag::UnbalancedTag(std::size_t position, const std::string& what)
    : TextInputError("unbalanced <entity> tag at character " + std::to_string(position) + ": " + what),
      position_(position) {}

EmptyMention::EmptyMention(std::size_t position)
    : TextInputError("empty entity mention at character " + std::to_string(position)) {}

SpanOutOfBounds::SpanOutOfBounds(std::size_t start, std::size_t length, std::size_t text_length)
    : TextInputError("span (" + std::to_string(start) + "," + std::to_string(length) +
                     ") exceeds text length " + std::to_string(text_length)) {}

OverlappingSpans::OverlappingSpans(std::size_t first_start, std::size_t second_start)
    : TextInputError("spans starting at " + std::to_string(first_start) + " and " + std::to_string(second_start) +
                     " overlap") {}

Document parse_entity_tagged_text(std::string_view raw) {
  const std::u32string in = decode_utf8(raw);
  std::u32string text;
  text.reserve(in.size());

  struct Open {
    std::size_t raw_position;
    std::size_t text_position;
  };
  std::optional<Open> open;
  std::vector<std::pair<std::size_t, std::size_t>> spans;

  for (std::size_t i = 0; i < in.size();) {
    if (starts_with_at(in, i, kOpen)) {
      if (open) throw UnbalancedTag(i, "nested <entity>");
      open = Open{i, text.size()};
      i += kOpen.size();
    } else if (starts_with_at(in, i, kClose)) {
      if (!open) throw UnbalancedTag(i, "</entity> without <entity>");
      if (text.size() == open->text_position) throw EmptyMention(open->raw_position);
      spans.emplace_back(open->text_position, text.size() - open->text_position);
      open.reset();
      i += kClose.size();
    } else {
      text.push_back(in[i++]);
    }
  }
  if (open) throw UnbalancedTag(open->raw_position, "<entity> never closed");

  Document doc;
  for (const auto& [start, length] : spans)
    doc.mentions.push_back(Mention{start, length, encode_utf8(std::u32string_view(text).substr(start, length))});
  doc.text = encode_utf8(text);
  return doc;
}

Document parse_spans_payload(std::string_view text, std::vector<Span> spans) {
  const std::u32string cps = decode_utf8(text);
  std::sort(spans.begin(), spans.end());

  Document doc;
  doc.text = std::string(text);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto [start, length] = spans[i];
    if (start > cps.size() || length > cps.size() - start) throw SpanOutOfBounds(start, length, cps.size());
    if (length == 0) throw EmptyMention(start);
    if (i > 0 && start < spans[i - 1].first + spans[i - 1].second) throw OverlappingSpans(spans[i - 1].first, start);
    doc.mentions.push_back(Mention{start, length, encode_utf8(std::u32string_view(cps).substr(start, length))});
  }
  return doc;
}

std::string render_tagged(const Document& doc) {
  const std::u32string cps = decode_utf8(doc.text);
  std::u32string out;
  std::size_t at = 0;
  for (const auto& m : doc.mentions) {
    out.append(cps, at, m.start - at);
    out += kOpen;
    out.append(cps, m.start, m.length);
    out += kClose;
    at = m.start + m.length;
  }
  out.append(cps, at, std::u32string::npos);
  return encode_utf8(out);
}

}  // namespace entlink
