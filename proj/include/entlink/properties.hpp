#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace entlink {

// `key=value` lines; '#' or '!' start a comment line; surrounding blanks are
// trimmed. Later duplicates win.
using Properties = std::map<std::string, std::string>;

Properties parse_properties(std::istream& in);
Properties read_properties_file(const std::filesystem::path& path);

class InvalidValue : public std::runtime_error {
 public:
  InvalidValue(std::string key, std::string value, const std::string& why);
  const std::string& key() const noexcept { return key_; }
  const std::string& value() const noexcept { return value_; }

 private:
  std::string key_;
  std::string value_;
};

bool parse_bool_value(const std::string& key, std::string_view value);
long long parse_int_value(const std::string& key, std::string_view value);
double parse_real_value(const std::string& key, std::string_view value);

/// Comma-separated list with blanks trimmed and empty items dropped.
std::vector<std::string> split_list(std::string_view value);

std::string_view trim(std::string_view s) noexcept;

}  // namespace entlink
