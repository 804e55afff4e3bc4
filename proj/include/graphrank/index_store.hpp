#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "graphrank/engine.hpp"

namespace graphrank {

inline constexpr int kIndexFormatVersion = 1;

struct IndexManifest {
  int format_version = kIndexFormatVersion;
  std::size_t doc_count = 0;
  std::size_t concept_count = 0;
  std::size_t edge_count = 0;
  std::map<std::string, std::string> files;  // file name -> crc32 (hex)
};

struct IndexInputs {
  std::filesystem::path corpus;
  std::filesystem::path vocabulary;
  std::optional<std::filesystem::path> ontology;
  std::optional<std::filesystem::path> config;
};

// Validates all inputs and writes the index directory: canonical documents,
// vocabulary, ontology, config, corpus stats, statement and text postings,
// and manifest.json. Output is byte-identical for identical inputs.
IndexManifest write_index(const IndexInputs& inputs, const std::filesystem::path& dir);

IndexManifest read_manifest(const std::filesystem::path& dir);

// Loads an index directory after checking format version and checksums.
Engine load_index(const std::filesystem::path& dir);

}  // namespace graphrank
