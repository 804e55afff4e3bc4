#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "graphrank/baselines.hpp"
#include "graphrank/ranker.hpp"

namespace graphrank {

struct EngineConfig {
  Weights weights;
  PredicateTaxonomy taxonomy = PredicateTaxonomy::defaults();
  BM25Params bm25;
};

// Format, one setting per line, '#' starts a comment:
//   weights = [w1, w2, w3, w4]
//   k1 = 1.2
//   b = 0.75
//   <predicate><TAB><level 1|2|3>
// Predicate lines extend or override the built-in taxonomy.
EngineConfig load_config(const std::filesystem::path& source);
EngineConfig load_config(std::istream& in, const std::string& source_name);

// Canonical text form; load_config(serialize_config(c)) == c.
std::string serialize_config(const EngineConfig& config);

}  // namespace graphrank
