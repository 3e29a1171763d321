#include "entlink/text.hpp"

#include <memory>

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace entlink {

namespace {

std::string utf8_of(const icu::UnicodeString& us) {
  std::string out;
  us.toUTF8String(out);
  return out;
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c) != 0; }
bool is_punct(UChar32 c) { return u_ispunct(c) != 0; }

void flush_token(std::u32string& token, std::u32string& out) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && is_punct(static_cast<UChar32>(token[begin]))) ++begin;
  while (end > begin && is_punct(static_cast<UChar32>(token[end - 1]))) --end;
  if (begin < end) {
    if (!out.empty()) out.push_back(U' ');
    out.append(token, begin, end - begin);
  }
  token.clear();
}

icu::BreakIterator& word_breaker() {
  thread_local std::unique_ptr<icu::BreakIterator> breaker = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> it(icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
    if (U_FAILURE(status) || !it) throw std::runtime_error("ICU word break iterator unavailable");
    return it;
  }();
  return *breaker;
}

}  // namespace

InvalidUtf8::InvalidUtf8(std::size_t byte_offset)
    : std::runtime_error("invalid UTF-8 at byte " + std::to_string(byte_offset)), byte_offset_(byte_offset) {}

bool is_valid_utf8(std::string_view s) noexcept {
  const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto len = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < len) {
    UChar32 c;
    U8_NEXT(p, i, len, c);
    if (c < 0) return false;
  }
  return true;
}

std::u32string decode_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto len = static_cast<std::int32_t>(s.size());
  std::u32string out;
  out.reserve(s.size());
  std::int32_t i = 0;
  while (i < len) {
    const std::int32_t at = i;
    UChar32 c;
    U8_NEXT(p, i, len, c);
    if (c < 0) throw InvalidUtf8(static_cast<std::size_t>(at));
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    std::uint8_t buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) throw std::invalid_argument("code point not encodable as UTF-8");
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

std::size_t code_point_count(std::string_view s) { return decode_utf8(s).size(); }

std::string normalize_surface_form(std::string_view s) {
  icu::UnicodeString us = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<std::int32_t>(s.size())));
  us.toLower(icu::Locale::getRoot());

  std::u32string out;
  std::u32string token;
  for (std::int32_t i = 0; i < us.length(); i = us.moveIndex32(i, 1)) {
    const UChar32 c = us.char32At(i);
    if (is_space(c)) {
      flush_token(token, out);
    } else {
      token.push_back(static_cast<char32_t>(c));
    }
  }
  flush_token(token, out);
  return encode_utf8(out);
}

std::vector<std::string> tokenize_words(std::string_view text) {
  const icu::UnicodeString us =
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  icu::BreakIterator& breaker = word_breaker();
  breaker.setText(us);

  std::vector<std::string> tokens;
  std::int32_t start = breaker.first();
  for (std::int32_t end = breaker.next(); end != icu::BreakIterator::DONE; start = end, end = breaker.next()) {
    if (breaker.getRuleStatus() == UBRK_WORD_NONE) continue;
    std::string token = normalize_surface_form(utf8_of(us.tempSubStringBetween(start, end)));
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  return tokens;
}

bool is_acronym_key(std::string_view s) {
  if (!is_valid_utf8(s)) return false;
  const std::u32string cps = decode_utf8(s);
  if (cps.size() < 2 || cps.size() > 6) return false;
  bool has_letter = false;
  for (char32_t c : cps) {
    const auto uc = static_cast<UChar32>(c);
    if (u_isupper(uc)) {
      has_letter = true;
    } else if (!u_isdigit(uc)) {
      return false;
    }
  }
  return has_letter;
}

std::u32string to_upper(std::u32string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t c : s) out.push_back(static_cast<char32_t>(u_toupper(static_cast<UChar32>(c))));
  return out;
}

std::string acronym_initials(std::string_view label) {
  std::u32string initials;
  bool at_word_start = true;
  int depth = 0;
  for (char32_t c : decode_utf8(label)) {
    if (c == U'(') {
      ++depth;
      continue;
    }
    if (c == U')') {
      if (depth > 0) --depth;
      at_word_start = true;
      continue;
    }
    if (depth > 0) continue;
    const auto uc = static_cast<UChar32>(c);
    if (is_space(uc) || c == U'-' || c == U'\u2010') {
      at_word_start = true;
    } else if (at_word_start && u_isalnum(uc)) {
      initials.push_back(static_cast<char32_t>(u_toupper(uc)));
      at_word_start = false;
    }
  }
  return encode_utf8(initials);
}

}  // namespace entlink
