#include "entlink/properties.hpp"

#include <charconv>
#include <fstream>
#include <istream>

namespace entlink {

std::string_view trim(std::string_view s) noexcept {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

Properties parse_properties(std::istream& in) {
  Properties props;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#' || text.front() == '!') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) continue;
    props[std::string(trim(text.substr(0, eq)))] = std::string(trim(text.substr(eq + 1)));
  }
  return props;
}

Properties read_properties_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read properties file " + path.string());
  return parse_properties(in);
}

InvalidValue::InvalidValue(std::string key, std::string value, const std::string& why)
    : std::runtime_error("invalid value for " + key + ": '" + value + "' (" + why + ")"),
      key_(std::move(key)),
      value_(std::move(value)) {}

bool parse_bool_value(const std::string& key, std::string_view value) {
  const std::string_view v = trim(value);
  if (v == "true") return true;
  if (v == "false") return false;
  throw InvalidValue(key, std::string(value), "expected true or false");
}

long long parse_int_value(const std::string& key, std::string_view value) {
  const std::string_view v = trim(value);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
    throw InvalidValue(key, std::string(value), "expected a decimal integer");
  return out;
}

double parse_real_value(const std::string& key, std::string_view value) {
  const std::string_view v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
    throw InvalidValue(key, std::string(value), "expected a number");
  return out;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> items;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const std::string_view item = trim(value.substr(0, comma));
    if (!item.empty()) items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

}  // namespace entlink
