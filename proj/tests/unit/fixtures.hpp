#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>

#include "graphrank/config.hpp"
#include "graphrank/corpus.hpp"
#include "graphrank/query.hpp"
#include "graphrank/vocabulary.hpp"

namespace fixtures {

inline std::filesystem::path data(const std::string& rel) {
  return std::filesystem::path(GRAPHRANK_DATA_DIR) / rel;
}

inline graphrank::Corpus fix1() { return graphrank::ingest_documents(data("fix1/corpus.jsonl")); }
inline graphrank::Vocabulary fix1_vocab() { return graphrank::load_vocabulary(data("fix1/vocab.tsv")); }
inline graphrank::EngineConfig fix1_config() { return graphrank::load_config(data("fix1/config.cfg")); }

inline graphrank::ConceptSet set(const std::string& label,
                                 std::initializer_list<std::pair<const char*, double>> items) {
  graphrank::ConceptSet s;
  s.label = label;
  for (const auto& [id, score] : items) s.alternatives.push_back({id, score});
  return s;
}

inline graphrank::PredicateSlot only(const std::string& p) {
  return graphrank::PredicateSlot::of({p});
}

// Single-alternative query over the given components.
inline graphrank::DisjunctiveQuery query(std::vector<graphrank::ConceptSet> components,
                                         std::vector<graphrank::FactPattern> patterns) {
  graphrank::DisjunctiveQuery q;
  q.components = std::move(components);
  q.alternatives.push_back({std::move(patterns)});
  q.query_translation_score = graphrank::query_translation_score(q);
  return q;
}

inline graphrank::Document doc(const std::string& id, std::size_t length) {
  graphrank::Document d;
  d.doc_id = id;
  d.text_length = length;
  return d;
}

}  // namespace fixtures
