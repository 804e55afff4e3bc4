#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "graphrank/corpus.hpp"
#include "graphrank/evalharness.hpp"
#include "graphrank/query.hpp"
#include "graphrank/vocabulary.hpp"

namespace graphrank {

struct SyntheticSpec {
  std::size_t docs = 1000;
  std::size_t concepts = 120;
  std::size_t topics = 10;
  double relevant_fraction = 0.05;  // docs planted with some topic's concepts
  std::uint64_t seed = 7;
};

// A self-consistent benchmark: corpus, vocabulary, disease ontology, keyword
// topics and graded judgments. Relevance is planted at generation time, so
// judgments do not depend on any retrieval method.
struct SyntheticBenchmark {
  std::vector<Document> documents;
  std::vector<ConceptEntry> vocabulary;
  std::vector<std::pair<ConceptId, ConceptId>> ontology;  // (child, parent)
  std::vector<Topic> topics;
  Qrels qrels;
};

SyntheticBenchmark make_synthetic_benchmark(const SyntheticSpec& spec);

// Writes corpus.jsonl, vocabulary.tsv, ontology.tsv, topics.tsv, qrels.txt.
void write_benchmark(const SyntheticBenchmark& bench, const std::filesystem::path& dir);

}  // namespace graphrank
