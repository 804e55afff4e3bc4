#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphrank/baselines.hpp"
#include "graphrank/config.hpp"
#include "graphrank/corpus.hpp"
#include "graphrank/evalharness.hpp"
#include "graphrank/matcher.hpp"
#include "graphrank/ontology.hpp"
#include "graphrank/query.hpp"
#include "graphrank/ranker.hpp"
#include "graphrank/vocabulary.hpp"

namespace graphrank {

enum class RankerMode { graphrank, bm25_rerank, bm25_native, none };

std::string_view to_string(RankerMode m);
std::optional<RankerMode> parse_ranker_mode(std::string_view s);

struct SearchMode {
  bool partial = false;
  bool expand_ontology = false;
  RankerMode ranker = RankerMode::graphrank;
  std::size_t cutoff = kDefaultCutoff;

  // Row label, e.g. "Partial Match + Ontology + GraphRank".
  std::string name() const;
  // File-name form, e.g. "partial_ontology_graphrank".
  std::string slug() const;
};

struct SearchHit {
  DocId doc_id;
  double score = 0.0;
  MatchClass match_class = MatchClass::full;
  std::optional<Fragment> best_fragment;
};

// Everything needed to answer queries, built once and then read-only.
class Engine {
 public:
  Engine(Corpus corpus, Vocabulary vocabulary, Ontology ontology, EngineConfig config);

  const Corpus& corpus() const { return corpus_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  const Ontology& ontology() const { return ontology_; }
  const EngineConfig& config() const { return config_; }
  const StatementIndex& statements() const { return statements_; }
  const TextIndex& text() const { return text_; }

  DisjunctiveQuery translate(const std::vector<TermTriple>& triples) const;
  DisjunctiveQuery compile(const Topic& topic) const;

  // translate -> (optional upward expansion) -> retrieve -> rank -> assemble.
  std::vector<SearchHit> search(const DisjunctiveQuery& q, const SearchMode& mode,
                                const Scope* scope = nullptr) const;

 private:
  Corpus corpus_;
  Vocabulary vocabulary_;
  Ontology ontology_;
  EngineConfig config_;
  StatementIndex statements_;
  TextIndex text_;
};

// Run-file scores: non-increasing along the list. Partial entries are shifted
// below the weakest full entry; rank-only lists get descending rank scores.
std::vector<RunEntry> to_run_entries(const std::vector<SearchHit>& hits, RankerMode ranker);

}  // namespace graphrank
