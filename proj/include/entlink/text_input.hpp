#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace entlink {

// Offsets and lengths count Unicode scalar values, not bytes.
struct Mention {
  std::size_t start = 0;
  std::size_t length = 0;
  std::string surface;

  bool operator==(const Mention&) const = default;
};

struct Document {
  std::string text;
  std::vector<Mention> mentions;  // sorted by start, non-overlapping

  bool operator==(const Document&) const = default;
};

class TextInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnbalancedTag : public TextInputError {
 public:
  UnbalancedTag(std::size_t position, const std::string& what);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class EmptyMention : public TextInputError {
 public:
  explicit EmptyMention(std::size_t position);
};

class SpanOutOfBounds : public TextInputError {
 public:
  SpanOutOfBounds(std::size_t start, std::size_t length, std::size_t text_length);
};

class OverlappingSpans : public TextInputError {
 public:
  OverlappingSpans(std::size_t first_start, std::size_t second_start);
};

inline constexpr std::string_view kOpenTag = "<entity>";
inline constexpr std::string_view kCloseTag = "</entity>";

/// Strips flat <entity>...</entity> tags; each pair becomes a Mention.
/// Throws UnbalancedTag (orphan or nested tags), EmptyMention, InvalidUtf8.
Document parse_entity_tagged_text(std::string_view raw);

using Span = std::pair<std::size_t, std::size_t>;  // (start, length)

Document parse_spans_payload(std::string_view text, std::vector<Span> spans);

/// Inverse of parse_entity_tagged_text.
std::string render_tagged(const Document& doc);

}  // namespace entlink
