#include "entlink/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

extern char** environ;

namespace entlink {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

int int_in_range(const std::string& key, const std::string& value, long long lo, long long hi) {
  const long long v = parse_int_value(key, value);
  if (v < lo || v > hi)
    throw InvalidValue(key, value, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

std::string format_real(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

Environment process_environment() {
  Environment env;
  for (char** e = environ; e && *e; ++e) {
    const std::string_view entry(*e);
    const auto eq = entry.find('=');
    if (eq != std::string_view::npos) env.emplace(entry.substr(0, eq), entry.substr(eq + 1));
  }
  return env;
}

bool is_linker_key(std::string_view key) {
  return std::find(kLinkerKeys.begin(), kLinkerKeys.end(), key) != kLinkerKeys.end();
}

bool apply_linker_setting(LinkerConfig& cfg, const std::string& key, const std::string& value) {
  constexpr long long kIntMax = std::numeric_limits<int>::max();
  if (key == "algorithm") {
    const std::string_view v = trim(value);
    if (v == "hits") {
      cfg.algorithm = Algorithm::hits;
    } else if (v == "pagerank") {
      cfg.algorithm = Algorithm::pagerank;
    } else {
      throw InvalidValue(key, value, "expected hits or pagerank");
    }
  } else if (key == "popularity") {
    cfg.popularity = parse_bool_value(key, value);
  } else if (key == "context") {
    cfg.context = parse_bool_value(key, value);
  } else if (key == "acronym") {
    cfg.acronym = parse_bool_value(key, value);
  } else if (key == "commonEntities") {
    cfg.common_entities = parse_bool_value(key, value);
  } else if (key == "heuristicExpansion") {
    cfg.heuristic_expansion = parse_bool_value(key, value);
  } else if (key == "ngramDistance") {
    cfg.ngram_distance = int_in_range(key, value, 2, 64);
  } else if (key == "depth") {
    cfg.depth = int_in_range(key, value, 0, kIntMax);
  } else if (key == "maxCandidates") {
    cfg.max_candidates = static_cast<std::size_t>(int_in_range(key, value, 1, kIntMax));
  } else if (key == "hitsIterations") {
    cfg.hits_iterations = int_in_range(key, value, 1, 100000);
  } else if (key == "pagerankIterations") {
    cfg.pagerank_iterations = int_in_range(key, value, 1, 100000);
  } else if (key == "simThreshold") {
    const double v = parse_real_value(key, value);
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidValue(key, value, "must be in [0, 1]");
    cfg.sim_threshold = v;
  } else if (key == "damping") {
    const double v = parse_real_value(key, value);
    if (!(v >= 0.0 && v < 1.0)) throw InvalidValue(key, value, "must be in [0, 1)");
    cfg.damping = v;
  } else {
    return false;
  }
  return true;
}

bool apply_setting(ServiceConfig& cfg, const std::string& key, const std::string& value) {
  if (apply_linker_setting(cfg.linker, key, value)) return true;
  if (key == "port") {
    cfg.port = int_in_range(key, value, 1, 65535);
  } else if (key == "bundleDir") {
    cfg.bundle_dir = std::string(trim(value));
  } else if (key == "host") {
    cfg.host = std::string(trim(value));
    if (cfg.host.empty()) throw InvalidValue(key, value, "must not be empty");
  } else if (key == "maxRequestBytes") {
    cfg.max_request_bytes = static_cast<std::size_t>(int_in_range(key, value, 1, std::numeric_limits<int>::max()));
  } else {
    return false;
  }
  return true;
}

ServiceConfig load_config(const std::optional<std::filesystem::path>& properties_file, const Environment& env) {
  ServiceConfig cfg;
  if (properties_file) {
    for (const auto& [key, value] : read_properties_file(*properties_file)) apply_setting(cfg, key, value);
  }

  const auto apply_env = [&](std::string_view key) {
    const auto it = env.find(std::string(kEnvPrefix) + upper(key));
    if (it != env.end()) apply_setting(cfg, std::string(key), it->second);
  };
  for (auto key : kLinkerKeys) apply_env(key);
  for (auto key : kServerKeys) apply_env(key);
  return cfg;
}

std::string dump_config(const ServiceConfig& cfg) {
  const LinkerConfig& l = cfg.linker;
  const std::map<std::string, std::string> values = {
      {"acronym", bool_text(l.acronym)},
      {"algorithm", to_string(l.algorithm)},
      {"bundleDir", cfg.bundle_dir},
      {"commonEntities", bool_text(l.common_entities)},
      {"context", bool_text(l.context)},
      {"damping", format_real(l.damping)},
      {"depth", std::to_string(l.depth)},
      {"heuristicExpansion", bool_text(l.heuristic_expansion)},
      {"hitsIterations", std::to_string(l.hits_iterations)},
      {"host", cfg.host},
      {"maxCandidates", std::to_string(l.max_candidates)},
      {"maxRequestBytes", std::to_string(cfg.max_request_bytes)},
      {"ngramDistance", std::to_string(l.ngram_distance)},
      {"pagerankIterations", std::to_string(l.pagerank_iterations)},
      {"popularity", bool_text(l.popularity)},
      {"port", std::to_string(cfg.port)},
      {"simThreshold", format_real(l.sim_threshold)},
  };
  std::ostringstream out;
  for (const auto& [key, value] : values) out << key << '=' << value << '\n';
  return out.str();
}

}  // namespace entlink
