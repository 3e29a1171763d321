#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace entlink {

class InvalidUtf8 : public std::runtime_error {
 public:
  explicit InvalidUtf8(std::size_t byte_offset);
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

bool is_valid_utf8(std::string_view s) noexcept;

/// Throws InvalidUtf8 on malformed input.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

std::size_t code_point_count(std::string_view s);

// Canonical matching form for surface strings and index keys:
// Unicode lowercase (root locale), whitespace runs collapsed to one space,
// leading/trailing space dropped, punctuation stripped from token edges.
// Tokens that are pure punctuation vanish. Never throws; malformed UTF-8
// decodes to U+FFFD first.
std::string normalize_surface_form(std::string_view s);

// Word tokens on Unicode word boundaries (ICU rules, dictionary-based for
// CJK), each normalized like a surface form. Non-word segments such as spaces
// and punctuation are skipped.
std::vector<std::string> tokenize_words(std::string_view text);

// Key shape for the acronym index: 2 to 6 code points, each an uppercase
// letter or a decimal digit, at least one letter.
bool is_acronym_key(std::string_view s);

std::u32string to_upper(std::u32string_view s);

// Uppercased first letters of the label's words, with parenthesised parts
// dropped and hyphens treated as word breaks: "Paris Saint-Germain" -> "PSG".
std::string acronym_initials(std::string_view label);

}  // namespace entlink
