#pragma once

// Hand-computed metric cases. Expected values were worked out by hand
// (and double checked with a calculator), not with the harness.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

enum class Metric { precision, recall, ndcg };

struct MetricCase {
  std::string name;
  std::vector<std::pair<std::string, int>> judgments;
  std::vector<std::string> ranked;  // before condensing
  Metric metric;
  std::size_t k;
  double expected;
};

inline std::vector<MetricCase> metric_cases() {
  const std::vector<std::pair<std::string, int>> ten = {
      {"r0", 1}, {"r1", 1}, {"r2", 1}, {"r3", 1}, {"r4", 1},
      {"r5", 1}, {"r6", 1}, {"r7", 1}, {"r8", 1}, {"r9", 1}, {"n0", 0}, {"n1", 0}, {"n2", 0}, {"n3", 0}, {"n4", 0}};
  return {
      {"five correct, P@20", {{"a", 1}, {"b", 1}, {"c", 2}, {"d", 1}, {"e", 2}},
       {"a", "b", "c", "d", "e"}, Metric::precision, 20, 0.25},
      {"five of ten, P@10", ten,
       {"r0", "n0", "r1", "n1", "r2", "x", "n2", "r3", "y", "n3", "r4", "z", "n4", "w", "r5"},
       Metric::precision, 10, 0.5},  // x,y,z,w unjudged and condensed away
      {"empty list, P@10", ten, {}, Metric::precision, 10, 0.0},
      {"eight of ten, R@1000", ten,
       {"r0", "r1", "r2", "r3", "r4", "r5", "r6", "r7", "n0"}, Metric::recall, 1000, 0.8},
      {"all relevant, R@1000", {{"a", 2}, {"b", 1}, {"c", 0}}, {"c", "b", "a"}, Metric::recall,
       1000, 1.0},
      {"none retrieved, R@1000", {{"a", 2}, {"b", 1}}, {"q", "w"}, Metric::recall, 1000, 0.0},
      {"grades 2,0,1, nDCG@3", {{"a", 2}, {"b", 0}, {"c", 1}}, {"a", "b", "c"}, Metric::ndcg, 3,
       0.9502344167898356},
      {"ideal order, nDCG@10", {{"a", 2}, {"b", 2}, {"c", 1}, {"d", 0}}, {"b", "a", "c", "d"},
       Metric::ndcg, 10, 1.0},
      {"all zero, nDCG@10", {{"a", 2}, {"b", 0}, {"c", 0}}, {"b", "c"}, Metric::ndcg, 10, 0.0},
      {"condensed 1,2, nDCG@10", {{"a", 1}, {"b", 2}}, {"u1", "a", "u2", "b"}, Metric::ndcg, 10,
       0.8597186998521972},
      {"unretrieved relevant, nDCG@5",
       {{"a", 0}, {"b", 1}, {"c", 2}, {"d", 0}, {"e", 1}, {"f", 2}, {"g", 1}},
       {"a", "b", "c", "d", "e"}, Metric::ndcg, 5, 0.4406226719344102},
  };
}

}  // namespace oracle
