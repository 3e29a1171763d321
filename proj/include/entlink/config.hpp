#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "entlink/linker_config.hpp"
#include "entlink/properties.hpp"

namespace entlink {

struct ServiceConfig {
  LinkerConfig linker;
  std::string host{"0.0.0.0"};
  int port = 8080;
  std::string bundle_dir;
  std::size_t max_request_bytes = 1 << 20;

  bool operator==(const ServiceConfig&) const = default;
};

// Keys accepted in properties files, as AGD_<KEY uppercased> environment
// variables and as --key CLI flags.
inline constexpr std::array<std::string_view, 13> kLinkerKeys = {
    "algorithm",      "popularity",   "context",       "acronym",        "commonEntities",
    "ngramDistance",  "depth",        "heuristicExpansion", "simThreshold", "maxCandidates",
    "hitsIterations", "pagerankIterations", "damping"};
inline constexpr std::array<std::string_view, 4> kServerKeys = {"port", "bundleDir", "host", "maxRequestBytes"};

inline constexpr std::string_view kEnvPrefix = "AGD_";

using Environment = std::map<std::string, std::string>;

/// Snapshot of the process environment.
Environment process_environment();

bool is_linker_key(std::string_view key);

// Sets one field from its textual form; unknown keys return false.
// Throws InvalidValue on parse or range errors.
bool apply_setting(ServiceConfig& cfg, const std::string& key, const std::string& value);
bool apply_linker_setting(LinkerConfig& cfg, const std::string& key, const std::string& value);

// defaults < properties file < environment. Per-request overrides are applied
// later by the service on a copy of `linker`.
ServiceConfig load_config(const std::optional<std::filesystem::path>& properties_file, const Environment& env);

/// `key=value` lines for every key, sorted by key.
std::string dump_config(const ServiceConfig& cfg);

}  // namespace entlink
