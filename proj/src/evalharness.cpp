#include "graphrank/evalharness.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "graphrank/error.hpp"

namespace graphrank {

namespace {

const std::map<DocId, int> kNoJudgments;

bool is_relevant(const Qrels& qrels, const std::string& topic, const DocId& doc) {
  const auto g = qrels.grade(topic, doc);
  return g && *g >= kRelevantGrade;
}

double dcg(const std::vector<int>& grades, std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grades.size() && i < k; ++i) {
    sum += grades[i] / std::log2(static_cast<double>(i) + 2.0);
  }
  return sum;
}

}  // namespace

void Qrels::set(const std::string& topic, const DocId& doc, int grade) {
  if (grade < 0) throw InputError("negative grade for " + topic + "/" + doc);
  judgments_[topic][doc] = grade;
}

std::optional<int> Qrels::grade(const std::string& topic, const DocId& doc) const {
  auto t = judgments_.find(topic);
  if (t == judgments_.end()) return std::nullopt;
  auto d = t->second.find(doc);
  if (d == t->second.end()) return std::nullopt;
  return d->second;
}

const std::map<DocId, int>& Qrels::judged(const std::string& topic) const {
  auto t = judgments_.find(topic);
  return t == judgments_.end() ? kNoJudgments : t->second;
}

std::size_t Qrels::relevant_count(const std::string& topic) const {
  const auto& j = judged(topic);
  return static_cast<std::size_t>(
      std::count_if(j.begin(), j.end(), [](const auto& kv) { return kv.second >= kRelevantGrade; }));
}

Qrels load_qrels(std::istream& in, const std::string& source_name) {
  Qrels qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream is(line);
    std::string topic, iteration, doc, extra;
    long long grade = 0;
    if (!(is >> topic)) continue;
    if (!(is >> iteration >> doc >> grade) || (is >> extra)) {
      throw InputError(source_name, line_no, "expected 'topic_id 0 doc_id grade'");
    }
    if (grade < 0) throw InputError(source_name, line_no, "negative grade");
    qrels.set(topic, doc, static_cast<int>(grade));
  }
  return qrels;
}

Qrels load_qrels(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw InputError(source.string(), 0, "cannot open qrels file");
  return load_qrels(in, source.string());
}

void write_run(std::ostream& out, const Run& run) {
  char score[64];
  for (const auto& [topic, entries] : run.topics) {
    std::size_t rank = 0;
    for (const auto& e : entries) {
      std::snprintf(score, sizeof score, "%.6f", e.score);
      out << topic << " Q0 " << e.doc_id << ' ' << ++rank << ' ' << score << ' ' << run.tag
          << '\n';
    }
  }
}

Run read_run(std::istream& in, const std::string& source_name) {
  Run run;
  std::map<std::string, std::set<DocId>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream is(line);
    std::string topic, q0, doc, tag;
    std::size_t rank = 0;
    double score = 0.0;
    if (!(is >> topic)) continue;
    if (!(is >> q0 >> doc >> rank >> score >> tag)) {
      throw InputError(source_name, line_no, "expected 'topic_id Q0 doc_id rank score tag'");
    }
    if (!seen[topic].insert(doc).second) {
      throw InputError(source_name, line_no, "duplicate document '" + doc + "' in topic " + topic);
    }
    run.tag = tag;
    run.topics[topic].push_back({doc, score});
  }
  return run;
}

CondensedList condense(const std::vector<RunEntry>& ranked, const Qrels& qrels,
                       const std::string& topic) {
  CondensedList out;
  for (const auto& e : ranked) {
    if (qrels.grade(topic, e.doc_id)) {
      out.docs.push_back(e.doc_id);
    } else {
      ++out.removed;
    }
  }
  return out;
}

double precision_at_k(const std::vector<DocId>& condensed, const Qrels& qrels,
                      const std::string& topic, std::size_t k) {
  if (k == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < condensed.size() && i < k; ++i) {
    hits += is_relevant(qrels, topic, condensed[i]) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

double recall_at_k(const std::vector<DocId>& condensed, const Qrels& qrels,
                   const std::string& topic, std::size_t k) {
  const auto relevant = qrels.relevant_count(topic);
  if (relevant == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < condensed.size() && i < k; ++i) {
    hits += is_relevant(qrels, topic, condensed[i]) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(relevant);
}

std::optional<double> ndcg_at_k(const std::vector<DocId>& condensed, const Qrels& qrels,
                                const std::string& topic, std::size_t k) {
  const auto& judged = qrels.judged(topic);
  if (judged.empty()) return std::nullopt;
  std::vector<int> gains;
  for (const auto& d : condensed) gains.push_back(qrels.grade(topic, d).value_or(0));
  std::vector<int> ideal;
  for (const auto& [_, g] : judged) ideal.push_back(g);
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double idcg = dcg(ideal, k);
  return idcg > 0.0 ? dcg(gains, k) / idcg : 0.0;
}

MetricReport evaluate(const Run& run, const Qrels& qrels,
                      const std::vector<std::string>& excluded) {
  MetricReport report;
  report.excluded = excluded;
  for (const auto& [topic, ranked] : run.topics) {
    if (!qrels.has_topic(topic) || qrels.judged(topic).empty()) {
      report.warnings.push_back("topic " + topic + " has no judgments; skipped");
      continue;
    }
    const auto condensed = condense(ranked, qrels, topic);
    TopicMetrics m;
    m.topic = topic;
    m.retrieved = ranked.size();
    m.unjudged_removed = condensed.removed;
    m.relevant = qrels.relevant_count(topic);
    m.recall_1000 = recall_at_k(condensed.docs, qrels, topic, 1000);
    m.ndcg_10 = *ndcg_at_k(condensed.docs, qrels, topic, 10);
    m.ndcg_20 = *ndcg_at_k(condensed.docs, qrels, topic, 20);
    m.ndcg_100 = *ndcg_at_k(condensed.docs, qrels, topic, 100);
    m.p_10 = precision_at_k(condensed.docs, qrels, topic, 10);
    m.p_20 = precision_at_k(condensed.docs, qrels, topic, 20);
    m.p_100 = precision_at_k(condensed.docs, qrels, topic, 100);
    if (m.relevant == 0) report.no_relevant.push_back(topic);
    report.per_topic.push_back(std::move(m));
  }
  if (report.per_topic.empty()) {
    if (run.topics.empty()) report.warnings.push_back("run has no evaluable topics");
    else if (report.warnings.empty()) report.warnings.push_back("no evaluable topics");
    return report;
  }

  TopicMetrics mean;
  mean.topic = "all";
  for (const auto& m : report.per_topic) {
    mean.recall_1000 += m.recall_1000;
    mean.ndcg_10 += m.ndcg_10;
    mean.ndcg_20 += m.ndcg_20;
    mean.ndcg_100 += m.ndcg_100;
    mean.p_10 += m.p_10;
    mean.p_20 += m.p_20;
    mean.p_100 += m.p_100;
    mean.retrieved += m.retrieved;
    mean.unjudged_removed += m.unjudged_removed;
    mean.relevant += m.relevant;
  }
  const double n = static_cast<double>(report.per_topic.size());
  for (double* v : {&mean.recall_1000, &mean.ndcg_10, &mean.ndcg_20, &mean.ndcg_100, &mean.p_10,
                    &mean.p_20, &mean.p_100}) {
    *v /= n;
  }
  report.mean = mean;
  return report;
}

}  // namespace graphrank
