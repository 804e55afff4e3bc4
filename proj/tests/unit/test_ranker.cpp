#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "graphrank/error.hpp"
#include "graphrank/ranker.hpp"
#include "oracle/brute_force.hpp"
#include "oracle/random_corpus.hpp"
#include "oracle/reference_graphrank.hpp"

using namespace graphrank;
using fixtures::set;

namespace {

const Edge kTreats{"M", "treats", "DM"};
const Edge kMH{"M", "associated", "H"};
const Edge kHDM{"H", "associated", "DM"};

struct Fix1 {
  Corpus corpus = fixtures::fix1();
  PredicateTaxonomy taxonomy = fixtures::fix1_config().taxonomy;
  DocIndex da = *corpus.find("D-A");
  DocumentContext ctx() const { return context_for(corpus, da, taxonomy); }
};

Fragment frag(std::vector<Edge> edges) {
  Fragment f;
  f.doc_id = "D-A";
  f.edges = std::move(edges);
  return f;
}

}  // namespace

TEST(Ranker, FragmentConfidence) {
  Fix1 x;
  const auto& g = x.corpus.graph(x.da);
  EXPECT_DOUBLE_EQ(fragment_confidence(frag({kTreats}), g), 0.8);
  EXPECT_DOUBLE_EQ(fragment_confidence(frag({kMH, kHDM}), g), 0.4);
  EXPECT_DOUBLE_EQ(fragment_confidence(frag({kHDM}), g), 0.5);
}

TEST(Ranker, EdgeTfidf) {
  Fix1 x;
  const auto c = x.ctx();
  const double v = edge_tfidf(kMH, c.profile, c.stats, c.taxonomy);
  EXPECT_NEAR(v, 0.5 * std::log(2.0) * 0.25, 1e-15);
  EXPECT_NEAR(v, 0.0866, 1e-4);
  EXPECT_DOUBLE_EQ(edge_tfidf(kTreats, c.profile, c.stats, c.taxonomy), 0.0);
  EXPECT_THROW(edge_tfidf({"M", "unknownpred", "H"}, c.profile, c.stats, c.taxonomy),
               MissingSpecificityError);
}

TEST(Ranker, FragmentMinTfidf) {
  Fix1 x;
  const auto c = x.ctx();
  EXPECT_NEAR(fragment_min_tfidf(frag({kMH, kHDM}), c.profile, c.stats, c.taxonomy), 0.0866, 1e-4);
  EXPECT_DOUBLE_EQ(fragment_min_tfidf(frag({kMH}), c.profile, c.stats, c.taxonomy),
                   edge_tfidf(kMH, c.profile, c.stats, c.taxonomy));
  EXPECT_DOUBLE_EQ(fragment_min_tfidf(frag({kMH, kTreats}), c.profile, c.stats, c.taxonomy), 0.0);
}

TEST(Ranker, FragmentCoverage) {
  Fix1 x;
  const auto c = x.ctx();
  EXPECT_DOUBLE_EQ(fragment_coverage(frag({kTreats}), c.profile), 0.6);
  EXPECT_DOUBLE_EQ(fragment_coverage(frag({kMH}), c.profile), 0.0);
}

TEST(Ranker, NeighborEdges) {
  Fix1 x;
  const auto& g = x.corpus.graph(x.da);
  auto n = neighbor_edges(kTreats, g);
  std::sort(n.begin(), n.end());
  EXPECT_EQ(n, (std::vector<Edge>{kHDM, kMH}));

  auto d = fixtures::doc("Y", 10);
  d.mentions = {{"M", 0, 1}, {"DM", 2, 3}};
  d.extractions = {{"M", "treats", "DM", 0.5, 0}, {"M", "associated", "DM", 0.5, 0},
                   {"DM", "associated", "M", 0.5, 0}};
  const auto g2 = build_document_graph(d);
  EXPECT_TRUE(neighbor_edges(kTreats, g2).empty());  // parallel edges excluded
}

TEST(Ranker, RelationalSimilarity) {
  Fix1 x;
  const auto c = x.ctx();
  const double tfidf = 0.5 * std::log(2.0) * 0.25;
  const double expected = (tfidf + 0.0 + 0.4) / 3.0 + (tfidf + 0.0 + 0.5) / 3.0;
  EXPECT_NEAR(relational_similarity(frag({kTreats}), c), expected, 1e-15);
  EXPECT_NEAR(relational_similarity(frag({kTreats}), c), 0.3577, 1e-4);

  auto d = fixtures::doc("Y", 10);
  d.mentions = {{"M", 0, 1}, {"DM", 2, 3}};
  d.extractions = {{"M", "treats", "DM", 0.5, 0}};
  const auto only = Corpus::from_documents({d});
  EXPECT_DOUBLE_EQ(relational_similarity(frag({kTreats}), context_for(only, 0, x.taxonomy)), 0.0);
}

TEST(Ranker, RelationalIncreasesWithNeighborConfidence) {
  auto d = fixtures::doc("Y", 100);
  d.mentions = {{"M", 0, 1}, {"DM", 20, 21}, {"H", 40, 41}};
  d.extractions = {{"M", "treats", "DM", 0.5, 0}, {"M", "associated", "H", 0.2, 0}};
  const auto tax = PredicateTaxonomy::defaults();
  const auto a = Corpus::from_documents({d});
  d.extractions[1].confidence = 0.4;
  const auto b = Corpus::from_documents({d});
  EXPECT_LT(relational_similarity(frag({kTreats}), context_for(a, 0, tax)),
            relational_similarity(frag({kTreats}), context_for(b, 0, tax)));
}

TEST(Ranker, FragmentTranslation) {
  const std::vector<ConceptSet> comps = {set("a", {{"x", 1.0}}), set("b", {{"y", 0.5}, {"z", 1.0}})};
  Fragment f;
  f.node_bindings = {"x", "y"};
  EXPECT_DOUBLE_EQ(fragment_translation(f, comps), 0.5);
  f.node_bindings = {"x", "z"};
  EXPECT_DOUBLE_EQ(fragment_translation(f, comps), 1.0);
  const std::vector<ConceptSet> up = {set("a", {{"x", 1.0}}), set("b", {{"g", 1.0 / 3.0}})};
  f.node_bindings = {"x", "g"};
  EXPECT_DOUBLE_EQ(fragment_translation(f, up), 1.0 / 3.0);
}

TEST(Ranker, NormalizeAndCombine) {
  const Weights w;
  auto one = normalize_and_combine({{0.3, 0.2, 0.1, 0.4, 0.7}}, w);
  EXPECT_DOUBLE_EQ(one[0], 0.7);

  auto two = normalize_and_combine({{0.2, 0, 0, 0, 1.0}, {0.4, 0, 0, 0, 1.0}}, Weights::unit(0));
  EXPECT_DOUBLE_EQ(two[0], 0.5);
  EXPECT_DOUBLE_EQ(two[1], 1.0);

  auto zero = normalize_and_combine({{0, 1, 1, 1, 1.0}, {0, 0.5, 1, 1, 1.0}}, w);
  EXPECT_DOUBLE_EQ(zero[0], 0.75);  // confidence column is all zero
  EXPECT_DOUBLE_EQ(zero[1], 0.25 * 0.5 + 0.5);
}

TEST(Ranker, WeightsValidate) {
  EXPECT_NO_THROW(Weights{}.validate());
  EXPECT_THROW((Weights{{0.5, 0.5, 0.5, 0.0}}).validate(), InputError);
  EXPECT_THROW((Weights{{1.5, -0.5, 0.0, 0.0}}).validate(), InputError);
}

TEST(Ranker, TaxonomyLevels) {
  const auto t = PredicateTaxonomy::defaults();
  EXPECT_DOUBLE_EQ(t.specificity("associated"), 0.25);
  EXPECT_DOUBLE_EQ(t.specificity("treats"), 1.0);
  EXPECT_DOUBLE_EQ(t.specificity("interacts"), 0.5);
  EXPECT_THROW(t.specificity("nonsense"), MissingSpecificityError);
  EXPECT_THROW(PredicateTaxonomy::level_specificity(4), InputError);
}

TEST(Ranker, GraphRankFix1) {
  Fix1 x;
  const auto q = fixtures::query({set("m", {{"M", 1}}), set("dm", {{"DM", 0.5}})},
                                 {{0, PredicateSlot::wildcard(), 1}});
  const auto r = retrieve(q, build_statement_index(x.corpus), x.corpus);
  const auto full = graph_rank(q, r.full, MatchClass::full, x.corpus, x.taxonomy, Weights{});
  ASSERT_EQ(full.size(), 2u);  // D-A via treats, D-B via associated
  EXPECT_EQ(full[0].doc_id, "D-A");
  EXPECT_EQ(full[0].best_fragment.edges[0], kTreats);

  // Reference evaluator over the same fragments.
  oracle::Reference ref{x.corpus.documents(), x.taxonomy.entries()};
  const auto o = oracle::retrieve(q, x.corpus.documents());
  std::map<std::string, std::vector<oracle::RefFragment>> cls;
  for (const auto& [id, pooled] : o.full) {
    for (const auto& [edges, t] : pooled) cls[id].push_back({edges, t});
  }
  const auto want = ref.score(cls);
  for (const auto& sd : full) EXPECT_NEAR(sd.score, want.at(sd.doc_id), 1e-12) << sd.doc_id;
}

TEST(Ranker, GraphRankDuplicatesAndEmpty) {
  Fix1 x;
  const auto q = fixtures::query({set("m", {{"M", 1}}), set("dm", {{"DM", 1}})},
                                 {{0, PredicateSlot::wildcard(), 1}});
  Fragment f{"D-A", {kTreats}, {"M", "DM"}};
  const auto once = graph_rank(q, {{"D-A", {f}}}, MatchClass::full, x.corpus, x.taxonomy, {});
  const auto twice = graph_rank(q, {{"D-A", {f, f}}}, MatchClass::full, x.corpus, x.taxonomy, {});
  EXPECT_DOUBLE_EQ(once[0].score, twice[0].score);
  EXPECT_TRUE(graph_rank(q, {}, MatchClass::full, x.corpus, x.taxonomy, {}).empty());
}

TEST(Ranker, AssembleFullBeforePartial) {
  const std::vector<ScoredDocument> full = {{"A", 0.3, MatchClass::full, {}}};
  const std::vector<ScoredDocument> partial = {{"B", 0.9, MatchClass::partial, {}}};
  const auto r = assemble_final_ranking(full, partial);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].doc_id, "A");
  EXPECT_EQ(r[1].doc_id, "B");
  EXPECT_EQ(assemble_final_ranking(full, {}).size(), 1u);
  EXPECT_THROW(assemble_final_ranking(full, {{"A", 0.1, MatchClass::partial, {}}}),
               InternalInconsistency);

  std::vector<ScoredDocument> many;
  for (int i = 0; i < 1500; ++i) many.push_back({"d" + std::to_string(i), 0.5, MatchClass::full, {}});
  const auto cut = assemble_final_ranking({many.begin(), many.begin() + 700},
                                          {many.begin() + 700, many.end()}, 1000);
  ASSERT_EQ(cut.size(), 1000u);
  EXPECT_EQ(cut.back().doc_id, "d999");
}

TEST(Ranker, MinSemanticsMonotone) {
  Fix1 x;
  const auto c = x.ctx();
  const auto both = frag({kMH, kHDM});
  for (const auto& e : {kMH, kHDM}) {
    const auto one = frag({e});
    EXPECT_GE(fragment_confidence(one, c.graph), fragment_confidence(both, c.graph));
    EXPECT_GE(fragment_min_tfidf(one, c.profile, c.stats, c.taxonomy),
              fragment_min_tfidf(both, c.profile, c.stats, c.taxonomy));
    EXPECT_GE(fragment_coverage(one, c.profile), fragment_coverage(both, c.profile));
  }
}

TEST(Ranker, AgreesWithReferenceOnRandomCorpora) {
  const auto tax = PredicateTaxonomy::defaults();
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    oracle::RandomWorld w(seed, {.max_docs = 20});
    const auto docs = w.corpus();
    const auto c = Corpus::from_documents(docs);
    const auto idx = build_statement_index(c);
    oracle::Reference ref{c.documents(), tax.entries()};
    for (int k = 0; k < 3; ++k) {
      const auto q = w.query();
      const auto r = retrieve(q, idx, c);
      const auto o = oracle::retrieve(q, docs);
      for (auto [mine, theirs, cls] : {std::tuple{&r.full, &o.full, MatchClass::full},
                                       std::tuple{&r.partial, &o.partial, MatchClass::partial}}) {
        std::map<std::string, std::vector<oracle::RefFragment>> frags;
        for (const auto& [id, pooled] : *theirs) {
          for (const auto& [edges, t] : pooled) frags[id].push_back({edges, t});
        }
        const auto want = ref.score(frags);
        const auto got = graph_rank(q, *mine, cls, c, tax, Weights{});
        ASSERT_EQ(got.size(), want.size());
        for (const auto& sd : got) {
          ASSERT_NEAR(sd.score, want.at(sd.doc_id), 1e-9) << "seed " << seed << " " << sd.doc_id;
          EXPECT_GE(sd.score, 0.0);
          EXPECT_LE(sd.score, 1.0);
        }
      }
    }
  }
}
