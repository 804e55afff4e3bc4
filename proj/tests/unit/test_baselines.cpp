#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "graphrank/baselines.hpp"
#include "graphrank/error.hpp"
#include "oracle/bm25_reference.hpp"
#include "oracle/random_corpus.hpp"

using namespace graphrank;

namespace {

Document tokens_doc(const std::string& id, std::vector<std::string> tokens) {
  auto d = fixtures::doc(id, 10);
  d.tokens = std::move(tokens);
  return d;
}

Corpus micro() {
  return Corpus::from_documents({tokens_doc("d1", {"metformin", "treats", "diabetes"}),
                                 tokens_doc("d2", {"metformin", "metformin", "lowers", "glucose", "levels"}),
                                 tokens_doc("d3", {"aspirin", "reduces", "pain", "fast"})});
}

}  // namespace

TEST(Bm25, BuildIndex) {
  const auto idx = build_text_index(micro());
  EXPECT_EQ(idx.doc_count(), 3u);
  EXPECT_DOUBLE_EQ(idx.avg_length, 4.0);
  EXPECT_EQ(idx.df("metformin"), 2u);
  EXPECT_EQ(idx.tf("metformin", 1), 2u);
  EXPECT_EQ(idx.tf("metformin", 2), 0u);
  EXPECT_EQ(idx.df("nothing"), 0u);

  const auto empty = build_text_index(Corpus{});
  EXPECT_EQ(empty.doc_count(), 0u);
  EXPECT_DOUBLE_EQ(empty.avg_length, 0.0);
  EXPECT_EQ(build_text_index(fixtures::fix1()).doc_count(), 2u);
}

TEST(Bm25, HandTable) {
  // N=3, df=2: idf = ln(1.6); avglen 4; k1 1.2, b 0.75
  //   d1: tf 1, len 3 -> idf * 2.2 / 1.975
  //   d2: tf 2, len 5 -> idf * 4.4 / 3.425
  const auto idx = build_text_index(micro());
  EXPECT_NEAR(bm25_idf(3, 2), std::log(1.6), 1e-15);
  EXPECT_NEAR(bm25_score({"metformin"}, 0, idx), 0.523548346501579, 1e-9);
  EXPECT_NEAR(bm25_score({"metformin"}, 1, idx), 0.6038002828266386, 1e-9);
  EXPECT_DOUBLE_EQ(bm25_score({"metformin"}, 2, idx), 0.0);

  const auto r = bm25_retrieve("metformin", 10, idx);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].doc_id, "d2");
  EXPECT_EQ(r[1].doc_id, "d1");
}

TEST(Bm25, AdditiveAndMonotone) {
  const auto idx = build_text_index(micro());
  EXPECT_NEAR(bm25_score({"metformin", "treats"}, 0, idx),
              bm25_score({"metformin"}, 0, idx) + bm25_score({"treats"}, 0, idx), 1e-15);
  EXPECT_DOUBLE_EQ(bm25_score({"unknown"}, 0, idx), 0.0);

  const auto a = build_text_index(Corpus::from_documents(
      {tokens_doc("x", {"t", "u", "v"}), tokens_doc("y", {"w"})}));
  const auto b = build_text_index(Corpus::from_documents(
      {tokens_doc("x", {"t", "t", "v"}), tokens_doc("y", {"w"})}));
  EXPECT_LT(bm25_score({"t"}, 0, a), bm25_score({"t"}, 0, b));
}

TEST(Bm25, IdenticalDocsTie) {
  const auto c = Corpus::from_documents({tokens_doc("b", {"x", "y"}), tokens_doc("a", {"x", "y"}),
                                         tokens_doc("c", {"z"})});
  const auto idx = build_text_index(c);
  EXPECT_DOUBLE_EQ(bm25_score({"x"}, 0, idx), bm25_score({"x"}, 1, idx));
  const auto r = bm25_rerank("x", {"b", "a", "c"}, idx);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].doc_id, "a");
  EXPECT_EQ(r[1].doc_id, "b");
  EXPECT_EQ(r[2].doc_id, "c");
}

TEST(Bm25, Rerank) {
  const auto idx = build_text_index(micro());
  const auto one = bm25_rerank("metformin", {"d3"}, idx);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].doc_id, "d3");
  EXPECT_TRUE(bm25_rerank("metformin", {"nope"}, idx).empty());

  const auto fix = build_text_index(fixtures::fix1());
  const auto r = bm25_rerank("metformin hypertension", {"D-B", "D-A"}, fix);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].doc_id, "D-A");  // only D-A mentions hypertension
  EXPECT_GT(r[0].score, r[1].score);
}

TEST(Bm25, RetrieveEdges) {
  const auto idx = build_text_index(micro());
  EXPECT_TRUE(bm25_retrieve("zebra quagga", 5, idx).empty());
  EXPECT_EQ(bm25_retrieve("metformin aspirin", 100, idx).size(), 3u);
  const Scope scope{"d1", "d3"};
  const auto r = bm25_retrieve("metformin aspirin", 100, idx, {}, &scope);
  ASSERT_EQ(r.size(), 2u);
  for (const auto& h : r) EXPECT_NE(h.doc_id, "d2");
}

TEST(Bm25, ParamsValidate) {
  EXPECT_NO_THROW(BM25Params{}.validate());
  EXPECT_THROW((BM25Params{0.0, 0.5}).validate(), InputError);
  EXPECT_THROW((BM25Params{1.2, 1.5}).validate(), InputError);
}

TEST(Bm25, TopKMatchesExhaustive) {
  const std::vector<std::string> words = {"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta"};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    oracle::RandomWorld w(seed);
    std::vector<Document> docs;
    for (int i = 0; i < 100; ++i) {
      std::vector<std::string> t;
      for (auto n = w.uniform(1, 12); n > 0; --n) t.push_back(words[w.uniform(0, words.size() - 1)]);
      docs.push_back(tokens_doc("d" + std::to_string(i), t));
    }
    const auto c = Corpus::from_documents(docs);
    const auto idx = build_text_index(c);
    const std::vector<std::string> q = {words[w.uniform(0, 6)], words[w.uniform(0, 6)]};
    const auto want = oracle::bm25_exhaustive(docs, q);
    for (std::size_t k : {1u, 5u, 10u, 100u}) {
      const auto got = bm25_retrieve(q[0] + " " + q[1], k, idx);
      ASSERT_EQ(got.size(), std::min(k, want.size()));
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].doc_id, want[i].doc_id) << "seed " << seed << " k " << k;
        EXPECT_NEAR(got[i].score, want[i].score, 1e-9);
      }
      const auto next = bm25_retrieve(q[0] + " " + q[1], k + 1, idx);
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(next[i].doc_id, got[i].doc_id);
    }
  }
}
