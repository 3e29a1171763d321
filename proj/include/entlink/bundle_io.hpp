#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "entlink/index.hpp"

namespace entlink {

class VersionMismatch : public std::runtime_error {
 public:
  VersionMismatch(int found, int expected);
  int found() const noexcept { return found_; }
  int expected() const noexcept { return expected_; }

 private:
  int found_;
  int expected_;
};

class CorruptBundle : public std::runtime_error {
 public:
  CorruptBundle(std::string file, const std::string& reason);
  const std::string& file() const noexcept { return file_; }

 private:
  std::string file_;
};

// Directory layout, one UTF-8 file per part, lines sorted by byte order:
//
//   meta.txt        key TAB value
//   surface.idx     normalized-surface TAB iri [TAB iri ...]
//   persons.idx     name-variant TAB iri [TAB iri ...]
//   rare.idx        normalized-surface TAB iri [TAB iri ...]
//   acronyms.idx    ACRONYM TAB expansion [TAB expansion ...]
//   context.idx     token TAB iri TAB tf [TAB iri TAB tf ...]
//   popularity.idx  iri TAB score
//   graph.idx       subject TAB predicate TAB object
//
// graph.idx also carries the type and redirect triples; meta.txt names the
// predicates that separate them again on load. Text fields escape backslash,
// TAB, LF and CR as \\ \t \n \r.
inline constexpr const char* kBundleFiles[] = {"meta.txt",     "surface.idx",    "persons.idx", "rare.idx",
                                               "acronyms.idx", "context.idx",    "popularity.idx",
                                               "graph.idx"};

/// Throws std::runtime_error when the directory cannot be created or written.
void persist_bundle(const IndexBundle& bundle, const std::filesystem::path& directory);

IndexBundle load_bundle(const std::filesystem::path& directory, int expected_version = kBundleFormatVersion);

}  // namespace entlink
