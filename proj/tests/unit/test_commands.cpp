#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "engine_fixtures.hpp"
#include "graphrank/commands.hpp"
#include "graphrank/error.hpp"

using namespace graphrank;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

EvaluateRequest mini_request(const std::filesystem::path& out, std::vector<SearchMode> modes) {
  EvaluateRequest r;
  r.topics = fixtures::data("mini/topics.tsv");
  r.qrels = fixtures::data("mini/qrels.txt");
  r.modes = std::move(modes);
  r.out_dir = out;
  return r;
}

const MetricReport& row(const EvaluationResult& r, const std::string& slug) {
  for (const auto& [m, report] : r.rows) {
    if (m.slug() == slug) return report;
  }
  throw std::runtime_error("no row " + slug);
}

}  // namespace

TEST(Commands, ModeMatrix) {
  EXPECT_EQ(mode_matrix({false, true}, {false}, {RankerMode::graphrank, RankerMode::bm25_rerank})
                .size(),
            4u);
  const auto all = mode_matrix({false, true}, {false, true},
                               {RankerMode::graphrank, RankerMode::bm25_rerank,
                                RankerMode::bm25_native, RankerMode::none});
  EXPECT_EQ(all.size(), 13u);
  EXPECT_EQ(all.back().slug(), "bm25_native");
}

TEST(Commands, EvaluateMiniBenchmark) {
  const auto engine = fixtures::mini_engine();
  const auto dir = fixtures::scratch("eval_mini");
  std::ostringstream log;
  const auto res = run_evaluation(
      engine,
      mini_request(dir, mode_matrix({false, true}, {false, true},
                                    {RankerMode::none, RankerMode::graphrank, RankerMode::bm25_native})),
      log);
  EXPECT_TRUE(res.excluded.empty());
  EXPECT_EQ(res.run_files.size(), 9u);

  // Full match, id order: T1 [d2 d1], T2 [d2], T3 [d3], T4 [d4], T5 [d7].
  const double l = std::log2(3.0);
  const double t1 = (1 + 2 / l) / (2 + 1 / l);
  const double half = 2 / (2 + 1 / l);
  const auto& full = row(res, "full");
  ASSERT_EQ(full.per_topic.size(), 5u);
  EXPECT_NEAR(full.mean->ndcg_10, (t1 + half + 1 + half + 1) / 5, 1e-12);
  EXPECT_NEAR(full.mean->recall_1000, 0.8, 1e-12);
  EXPECT_NEAR(full.mean->p_10, 0.12, 1e-12);

  EXPECT_GE(row(res, "partial").mean->recall_1000, full.mean->recall_1000);
  EXPECT_GE(row(res, "full_ontology").mean->recall_1000, full.mean->recall_1000);
  EXPECT_NEAR(row(res, "bm25_native").mean->recall_1000, 1.0, 1e-12);

  for (const char* f : {"metrics.tsv", "translation.tsv", "per_topic.tsv", "full.run"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  const auto table = render_metric_table(res);
  EXPECT_NE(table.find("Full Match\t5\t0.8000\t0.8760"), std::string::npos) << table;
}

TEST(Commands, EvaluateIsDeterministic) {
  const auto engine = fixtures::mini_engine();
  const auto a = fixtures::scratch("eval_det_a");
  const auto b = fixtures::scratch("eval_det_b");
  std::ostringstream log;
  const auto modes = mode_matrix({true}, {true}, {RankerMode::graphrank, RankerMode::bm25_rerank});
  auto ra = mini_request(a, modes);
  auto rb = mini_request(b, modes);
  rb.threads = 3;
  run_evaluation(engine, ra, log);
  run_evaluation(engine, rb, log);
  for (const char* f : {"partial_ontology_graphrank.run", "partial_ontology_bm25.run", "metrics.tsv"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(Commands, TranslationThresholdExcludesTopics) {
  const auto engine = fixtures::mini_engine();
  const auto dir = fixtures::scratch("eval_threshold");
  auto req = mini_request(dir, {SearchMode{false, false, RankerMode::graphrank}});
  req.min_translation = 0.9;
  std::ostringstream log;
  const auto res = run_evaluation(engine, req, log);
  EXPECT_EQ(res.excluded, (std::vector<std::string>{"T1", "T2"}));
  EXPECT_EQ(res.rows[0].second.per_topic.size(), 3u);
  EXPECT_NE(log.str().find("T1 excluded"), std::string::npos);
}

TEST(Commands, EmptyTopicsWarns) {
  const auto engine = fixtures::mini_engine();
  const auto dir = fixtures::scratch("eval_empty");
  std::ofstream(dir / "topics.tsv").close();
  auto req = mini_request(dir / "out", {SearchMode{}});
  req.topics = dir / "topics.tsv";
  std::ostringstream log;
  const auto res = run_evaluation(engine, req, log);
  EXPECT_FALSE(res.warnings.empty());
  EXPECT_FALSE(res.rows[0].second.mean);
}

TEST(Commands, SearchRequestShapes) {
  const auto engine = fixtures::fix1_engine();
  const auto dir = fixtures::scratch("search_shapes");
  SearchRequest r;
  r.triples = {"Metformin;treats;Diabetes"};
  r.out_dir = dir;
  const auto out = run_search(engine, r);
  ASSERT_TRUE(out.run_file);
  EXPECT_EQ(slurp(*out.run_file), "Q1 Q0 D-A 1 0.375000 full_graphrank\n");

  SearchRequest both;
  both.triples = {"Metformin;treats;Diabetes"};
  both.keywords = "metformin";
  EXPECT_THROW(run_search(engine, both), InputError);
  EXPECT_THROW(run_search(engine, SearchRequest{}), InputError);

  SearchRequest kw;
  kw.keywords = "metformin | hypertension";
  EXPECT_EQ(run_search(engine, kw).hits.front().doc_id, "D-A");
}

TEST(Commands, LoadScope) {
  const auto dir = fixtures::scratch("scope");
  std::ofstream(dir / "scope.txt") << "d1\n\n  d3 \n";
  EXPECT_EQ(load_scope(dir / "scope.txt"), (Scope{"d1", "d3"}));
  EXPECT_THROW(load_scope(dir / "none.txt"), InputError);
}
