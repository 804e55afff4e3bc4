#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphrank/engine.hpp"
#include "graphrank/evalharness.hpp"
#include "graphrank/index_store.hpp"

namespace graphrank {

inline constexpr const char* kThreadsEnv = "GRAPHRANK_THREADS";

// Worker count from GRAPHRANK_THREADS, else hardware concurrency (>= 1).
std::size_t thread_count_from_env();

// One doc id per line; blank lines ignored.
Scope load_scope(const std::filesystem::path& source);

// Cartesian product of match x ontology x ranker. bm25-native ignores the
// other two axes and appears once.
std::vector<SearchMode> mode_matrix(const std::vector<bool>& partial,
                                    const std::vector<bool>& ontology,
                                    const std::vector<RankerMode>& rankers,
                                    std::size_t cutoff = kDefaultCutoff);

struct SearchRequest {
  std::filesystem::path index_dir;
  std::vector<std::string> triples;  // "subject;predicate;object"
  std::optional<std::string> keywords;  // "term | term:type | ..."
  std::optional<std::string> text;      // free text
  SearchMode mode;
  std::optional<std::filesystem::path> scope;
  std::optional<std::filesystem::path> out_dir;
  std::string topic_id = "Q1";
};

struct SearchOutcome {
  DisjunctiveQuery query;
  std::vector<SearchHit> hits;
  std::optional<std::filesystem::path> run_file;
};

SearchOutcome run_search(const Engine& engine, const SearchRequest& request);
// Prints a listing with each hit's best fragment; writes the run file if asked.
SearchOutcome cmd_search(const SearchRequest& request, std::ostream& listing);

struct EvaluateRequest {
  std::filesystem::path index_dir;
  std::filesystem::path topics;
  std::filesystem::path qrels;
  std::vector<SearchMode> modes;
  std::optional<std::filesystem::path> scope;
  std::filesystem::path out_dir;
  double min_translation = 0.0;  // topics scoring below are excluded
  std::size_t threads = 1;
};

struct TopicTranslation {
  std::string topic_id;
  double score = 0.0;
  std::size_t alternatives = 0;
  std::string error;  // non-empty when excluded
};

struct EvaluationResult {
  std::vector<std::pair<SearchMode, MetricReport>> rows;
  std::vector<TopicTranslation> translations;
  std::vector<std::string> excluded;
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> run_files;
};

EvaluationResult run_evaluation(const Engine& engine, const EvaluateRequest& request,
                                std::ostream& log);
EvaluationResult cmd_evaluate(const EvaluateRequest& request, std::ostream& log);

// Rows = modes, columns = Recall@1000, nDCG@10/20/100, P@10/20/100.
std::string render_metric_table(const EvaluationResult& result);

}  // namespace graphrank
