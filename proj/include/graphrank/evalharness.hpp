#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphrank/types.hpp"

namespace graphrank {

// Graded judgments: topic -> doc -> grade (0 = judged non-relevant).
class Qrels {
 public:
  void set(const std::string& topic, const DocId& doc, int grade);
  std::optional<int> grade(const std::string& topic, const DocId& doc) const;
  bool has_topic(const std::string& topic) const { return judgments_.contains(topic); }
  const std::map<DocId, int>& judged(const std::string& topic) const;
  std::size_t relevant_count(const std::string& topic) const;
  const std::map<std::string, std::map<DocId, int>>& topics() const { return judgments_; }

 private:
  std::map<std::string, std::map<DocId, int>> judgments_;
};

Qrels load_qrels(const std::filesystem::path& source);
Qrels load_qrels(std::istream& in, const std::string& source_name);

struct RunEntry {
  DocId doc_id;
  double score = 0.0;
};

struct Run {
  std::string tag;
  std::map<std::string, std::vector<RunEntry>> topics;  // ranked, best first
};

// `topic_id Q0 doc_id rank score tag`, rank 1-based, score with 6 decimals.
void write_run(std::ostream& out, const Run& run);
Run read_run(std::istream& in, const std::string& source_name);

inline constexpr int kRelevantGrade = 1;

struct CondensedList {
  std::vector<DocId> docs;
  std::size_t removed = 0;
};

// Drops unjudged documents, preserving order.
CondensedList condense(const std::vector<RunEntry>& ranked, const Qrels& qrels,
                       const std::string& topic);

double precision_at_k(const std::vector<DocId>& condensed, const Qrels& qrels,
                      const std::string& topic, std::size_t k);
double recall_at_k(const std::vector<DocId>& condensed, const Qrels& qrels,
                   const std::string& topic, std::size_t k = 1000);
// nullopt when the topic has no judged documents.
std::optional<double> ndcg_at_k(const std::vector<DocId>& condensed, const Qrels& qrels,
                                const std::string& topic, std::size_t k);

struct TopicMetrics {
  std::string topic;
  double recall_1000 = 0.0;
  double ndcg_10 = 0.0, ndcg_20 = 0.0, ndcg_100 = 0.0;
  double p_10 = 0.0, p_20 = 0.0, p_100 = 0.0;
  std::size_t retrieved = 0;
  std::size_t unjudged_removed = 0;
  std::size_t relevant = 0;
};

struct MetricReport {
  std::vector<TopicMetrics> per_topic;
  std::optional<TopicMetrics> mean;  // arithmetic mean, "all" as topic
  std::vector<std::string> excluded;  // topics the caller could not translate
  std::vector<std::string> warnings;
  std::vector<std::string> no_relevant;  // evaluated, but no grade >= 1 in qrels
};

// Condenses each run topic, computes every metric, and averages over topics
// with at least one judged document. `excluded` topics are listed verbatim.
MetricReport evaluate(const Run& run, const Qrels& qrels,
                      const std::vector<std::string>& excluded = {});

}  // namespace graphrank
