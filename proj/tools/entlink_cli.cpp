// entlink: build index bundles, link tagged text, serve HTTP, evaluate.
//
//   entlink index KB OUT_DIR [--config FILE]
//   entlink link BUNDLE_DIR INPUT [--config FILE] [--type agdistis|candidates] [--<key> VALUE ...]
//   entlink serve [--config FILE] [--bundleDir DIR] [--port N] [--<key> VALUE ...]
//   entlink eval BUNDLE_DIR DOCS_TSV GOLD_TSV [--config FILE] [--<key> VALUE ...]
//
// Exit status: 0 success, 1 bad input data, 2 I/O, bundle or usage errors.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entlink/bundle_io.hpp"
#include "entlink/config.hpp"
#include "entlink/eval.hpp"
#include "entlink/index.hpp"
#include "entlink/kb.hpp"
#include "entlink/properties.hpp"
#include "entlink/service.hpp"
#include "entlink/text.hpp"
#include "entlink/text_input.hpp"

namespace fs = std::filesystem;
using namespace entlink;

namespace {

constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kSystemError = 2;

// A failure that has already been classified into an exit status.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kSystemError, "cannot read " + path.string()};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// --<key> flags for every configuration key; only flags actually given are
// applied, on top of file and environment.
struct ConfigFlags {
  std::optional<std::string> config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App& cmd, bool server_keys) {
    cmd.add_option("--config", config_file, "properties file");
    for (auto key : kLinkerKeys) add(cmd, std::string(key));
    if (server_keys) {
      for (auto key : kServerKeys) add(cmd, std::string(key));
    }
  }

  ServiceConfig resolve() const {
    try {
      std::optional<fs::path> file;
      if (config_file) file = fs::path(*config_file);
      ServiceConfig cfg = load_config(file, process_environment());
      for (const auto& [key, opt] : options) {
        if (opt->count() > 0) apply_setting(cfg, key, values.at(key));
      }
      cfg.linker.validate();
      return cfg;
    } catch (const InvalidValue& e) {
      throw Exit{kDataError, e.what()};
    } catch (const std::runtime_error& e) {
      throw Exit{kSystemError, e.what()};
    }
  }

 private:
  void add(CLI::App& cmd, const std::string& key) { options[key] = cmd.add_option("--" + key, values[key]); }
};

std::shared_ptr<const IndexBundle> open_bundle(const fs::path& dir) {
  try {
    return std::make_shared<const IndexBundle>(load_bundle(dir));
  } catch (const std::exception& e) {
    throw Exit{kSystemError, "cannot load bundle " + dir.string() + ": " + e.what()};
  }
}

int cmd_index(const std::string& kb_path, const std::string& out_dir, const std::optional<std::string>& config_file) {
  IndexConfig cfg;
  try {
    if (config_file) {
      const fs::path path(*config_file);
      cfg = index_config_from_properties(read_properties_file(path), path.parent_path());
    }
  } catch (const InvalidValue& e) {
    throw Exit{kDataError, e.what()};
  } catch (const std::runtime_error& e) {
    throw Exit{kSystemError, e.what()};
  }
  if (cfg.name.empty()) cfg.name = fs::path(kb_path).stem().string();
  if (!cfg.build_timestamp) {
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
      try {
        cfg.build_timestamp = parse_int_value("SOURCE_DATE_EPOCH", epoch);
      } catch (const InvalidValue& e) {
        throw Exit{kDataError, e.what()};
      }
    }
  }

  std::ifstream in(kb_path, std::ios::binary);
  if (!in) throw Exit{kSystemError, "cannot read " + kb_path};

  IndexBundle bundle;
  try {
    const KnowledgeBase kb = load_kb(in, cfg.language, cfg.name, cfg.predicates);
    bundle = build_indices(kb, cfg);
  } catch (const MalformedLine& e) {
    throw Exit{kDataError, kb_path + ": " + e.what()};
  } catch (const DuplicateRedirect& e) {
    throw Exit{kDataError, kb_path + ": " + e.what()};
  }

  try {
    persist_bundle(bundle, out_dir);
  } catch (const std::exception& e) {
    throw Exit{kSystemError, e.what()};
  }
  std::cout << "entities " << bundle.meta.entity_count << '\n'
            << "surface forms " << bundle.surface.size() << '\n'
            << "person names " << bundle.persons.size() << '\n'
            << "rare references " << bundle.rare.size() << '\n'
            << "acronyms " << bundle.acronyms.size() << '\n'
            << "bundle " << out_dir << '\n';
  return kOk;
}

int cmd_link(const std::string& bundle_dir, const std::string& input, const std::string& type,
             const ConfigFlags& flags) {
  const ServiceConfig cfg = flags.resolve();
  const std::string text = read_file(input);
  AnnotationService service(cfg, open_bundle(bundle_dir));
  try {
    std::cout << service.annotate(text, type, cfg.linker);
  } catch (const ServiceError& e) {
    throw Exit{e.status() >= 500 ? kSystemError : kDataError, e.what()};
  } catch (const TextInputError& e) {
    throw Exit{kDataError, e.what()};
  } catch (const InvalidUtf8& e) {
    throw Exit{kDataError, e.what()};
  } catch (const InvalidValue& e) {
    throw Exit{kDataError, e.what()};
  }
  return kOk;
}

int cmd_serve(const ConfigFlags& flags) {
  const ServiceConfig cfg = flags.resolve();
  if (cfg.bundle_dir.empty()) throw Exit{kSystemError, "no bundle directory (set bundleDir)"};
  AnnotationService service(cfg, open_bundle(cfg.bundle_dir));
  HttpServer server(service);
  int port = 0;
  try {
    port = server.bind(cfg.host, cfg.port);
  } catch (const std::runtime_error& e) {
    throw Exit{kSystemError, e.what()};
  }
  std::cout << "listening on " << cfg.host << ':' << port << std::endl;
  server.run();
  return kOk;
}

int cmd_eval(const std::string& bundle_dir, const std::string& docs_path, const std::string& gold_path,
             const ConfigFlags& flags) {
  const ServiceConfig cfg = flags.resolve();
  std::istringstream docs_in(read_file(docs_path));
  std::istringstream gold_in(read_file(gold_path));
  const Linker linker(open_bundle(bundle_dir));
  try {
    const auto docs = parse_documents_tsv(docs_in);
    const auto gold = parse_gold_tsv(gold_in);
    const EvalReport report = evaluate(linker, docs, gold, cfg.linker);
    std::cout << render_report_json(report) << "\n\n" << render_report_table(report);
  } catch (const EvalInputError& e) {
    throw Exit{kDataError, e.what()};
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-base agnostic entity linking"};
  app.require_subcommand(1);

  std::string kb_path, out_dir, bundle_dir, input, docs_path, gold_path;
  std::optional<std::string> index_config;
  std::string type = "agdistis";

  auto* index = app.add_subcommand("index", "build an index bundle from a KB dump");
  index->add_option("kb", kb_path, "KB dump in the triple-line format")->required();
  index->add_option("out", out_dir, "bundle output directory")->required();
  index->add_option("--config", index_config, "indexing properties file");

  ConfigFlags link_flags;
  auto* link = app.add_subcommand("link", "link the <entity> mentions of a tagged text file");
  link->add_option("bundle", bundle_dir, "bundle directory")->required();
  link->add_option("input", input, "tagged text file")->required();
  link->add_option("--type", type, "agdistis or candidates");
  link_flags.attach(*link, false);

  ConfigFlags serve_flags;
  auto* serve = app.add_subcommand("serve", "serve POST /AGDISTIS and GET /health");
  serve_flags.attach(*serve, true);

  ConfigFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "micro P/R/F1 against gold annotations");
  eval->add_option("bundle", bundle_dir, "bundle directory")->required();
  eval->add_option("documents", docs_path, "doc_id TAB text")->required();
  eval->add_option("gold", gold_path, "doc_id TAB start TAB length TAB surface TAB iri")->required();
  eval_flags.attach(*eval, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kSystemError;
  }

  try {
    if (*index) return cmd_index(kb_path, out_dir, index_config);
    if (*link) return cmd_link(bundle_dir, input, type, link_flags);
    if (*serve) return cmd_serve(serve_flags);
    if (*eval) return cmd_eval(bundle_dir, docs_path, gold_path, eval_flags);
  } catch (const Exit& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSystemError;
  }
  return kSystemError;
}
