#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

#include "entlink/index.hpp"
#include "entlink/kb.hpp"
#include "entlink/properties.hpp"

namespace entlink::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(ENTLINK_FIXTURE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// One fixture KB with its optional indexing properties and tagged sentence.
struct FixtureSet {
  const char* kb;
  const char* properties;  // nullptr: defaults
  const char* sentence;
};

inline constexpr std::array<FixtureSet, 6> kFixtureSets = {{
    {"rio.kb", nullptr, "rio_sentence.txt"},
    {"psg.kb", "psg.properties", "psg_sentence.txt"},
    {"barack.kb", nullptr, "barack_sentence.txt"},
    {"nyc.kb", nullptr, "nyc_sentence.txt"},
    {"wikidata.kb", "wikidata.properties", "wikidata_sentence.txt"},
    {"tokyo_ja.kb", "tokyo_ja.properties", "tokyo_sentence.txt"},
}};

inline IndexConfig fixture_index_config(const char* properties, const std::string& kb) {
  IndexConfig cfg;
  if (properties) cfg = index_config_from_properties(read_properties_file(fixture(properties)), ENTLINK_FIXTURE_DIR);
  if (cfg.name.empty()) cfg.name = std::filesystem::path(kb).stem().string();
  cfg.build_timestamp = 0;
  return cfg;
}

inline KnowledgeBase load_fixture_kb(const std::string& kb, const char* properties = nullptr) {
  const IndexConfig cfg = fixture_index_config(properties, kb);
  std::ifstream in(fixture(kb));
  if (!in) throw std::runtime_error("missing fixture " + kb);
  return load_kb(in, cfg.language, cfg.name, cfg.predicates);
}

inline std::shared_ptr<const IndexBundle> fixture_bundle(const std::string& kb, const char* properties = nullptr) {
  return std::make_shared<const IndexBundle>(
      build_indices(load_fixture_kb(kb, properties), fixture_index_config(properties, kb)));
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("entlink-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

/// Runs a shell command, capturing standard output; stderr goes to /dev/null.
inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = ::popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace entlink::testing
