#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "graphrank/error.hpp"
#include "graphrank/ontology.hpp"

using namespace graphrank;

namespace {

Ontology dag() { return load_ontology(fixtures::data("dag/ontology.tsv")); }

Ontology parse(const std::string& tsv) {
  std::istringstream in(tsv);
  return load_ontology(in, "onto.tsv");
}

using Ids = std::set<ConceptId>;

}  // namespace

TEST(Ontology, Subclasses) {
  const auto o = dag();
  EXPECT_EQ(o.subclasses("Cancer"), (Ids{"OvarianCancer", "OvarianCancerSubtype"}));
  EXPECT_TRUE(o.subclasses("OvarianCancerSubtype").empty());
  EXPECT_TRUE(o.subclasses("Unknown").empty());
}

TEST(Ontology, Superclasses) {
  const auto o = dag();
  EXPECT_EQ(o.superclasses("OvarianCancerSubtype"), (Ids{"OvarianCancer", "Cancer"}));
  EXPECT_TRUE(o.superclasses("Cancer").empty());
  EXPECT_TRUE(o.superclasses("Unknown").empty());
}

TEST(Ontology, RejectsCyclesAndSelfLoops) {
  EXPECT_THROW(parse("a\tb\nb\tc\nc\ta\n"), InputError);
  EXPECT_THROW(parse("a\ta\n"), InputError);
  EXPECT_THROW(parse("a\n"), InputError);
  EXPECT_NO_THROW(parse("a\tb\na\tc\nb\td\nc\td\n"));  // diamond is fine
}

TEST(Ontology, Similarity) {
  const auto o = dag();
  EXPECT_DOUBLE_EQ(ontological_sim("Cancer", "Cancer", o), 1.0);
  EXPECT_DOUBLE_EQ(ontological_sim("Unknown", "Unknown", o), 1.0);
  EXPECT_DOUBLE_EQ(ontological_sim("OvarianCancer", "Cancer", o), 0.5);
  EXPECT_DOUBLE_EQ(ontological_sim("Cancer", "OvarianCancer", o), 0.5);
  EXPECT_DOUBLE_EQ(ontological_sim("OvarianCancerSubtype", "Cancer", o), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(ontological_sim("Cancer", "Unknown", o), 0.0);

  const auto siblings = parse("a\tp\nb\tp\n");
  EXPECT_DOUBLE_EQ(ontological_sim("a", "b", siblings), 0.0);  // no ancestor chain
}

TEST(Ontology, SimilarityStrictlyDecreasesWithDistance) {
  const auto chain = parse("c1\tc0\nc2\tc1\nc3\tc2\nc4\tc3\n");
  double last = 1.0;
  for (const char* c : {"c1", "c2", "c3", "c4"}) {
    const double s = ontological_sim(c, "c0", chain);
    EXPECT_LT(s, last);
    EXPECT_GT(s, 0.0);
    last = s;
  }
}

TEST(Ontology, MultiParentShortestPath) {
  // x reaches r directly and through m.
  const auto o = parse("x\tm\nm\tr\nx\tr\n");
  EXPECT_DOUBLE_EQ(ontological_sim("x", "r", o), 0.5);
  EXPECT_EQ(o.path_nodes("x", "r"), 2u);
}

TEST(Ontology, ExpandUpwards) {
  const auto o = dag();
  auto q = fixtures::query({fixtures::set("drug", {{"D", 1.0}}),
                            fixtures::set("disease", {{"OvarianCancerSubtype", 1.0}})},
                           {{0, PredicateSlot::wildcard(), 1}});
  const auto x = expand_query_upwards(q, o);
  const auto& obj = x.components[1];
  ASSERT_EQ(obj.alternatives.size(), 3u);
  EXPECT_DOUBLE_EQ(obj.find("OvarianCancerSubtype")->score, 1.0);
  EXPECT_DOUBLE_EQ(obj.find("OvarianCancer")->score, 0.5);
  EXPECT_DOUBLE_EQ(obj.find("Cancer")->score, 1.0 / 3.0);
  EXPECT_EQ(obj.find("Cancer")->origin, ConceptOrigin::superclass);
  EXPECT_EQ(x.components[0].alternatives.size(), 1u);  // no superclasses
  EXPECT_EQ(x.alternatives, q.alternatives);
}

TEST(Ontology, ExpandUpwardsScalesBySourceScore) {
  const auto o = dag();
  auto q = fixtures::query({fixtures::set("a", {{"D", 1.0}}),
                            fixtures::set("b", {{"OvarianCancer", 0.8}})},
                           {{0, PredicateSlot::wildcard(), 1}});
  const auto x = expand_query_upwards(q, o);
  EXPECT_DOUBLE_EQ(x.components[1].find("Cancer")->score, 0.4);
}

TEST(Ontology, ExpandUpwardsKeepsExistingAndTakesMax) {
  const auto o = dag();
  // Cancer already present keeps its own score; OvarianCancer reached from
  // the subtype (1.0 * 0.5) and present at 0.3 keeps 0.3.
  auto q = fixtures::query(
      {fixtures::set("a", {{"D", 1.0}}),
       fixtures::set("b", {{"OvarianCancerSubtype", 1.0}, {"OvarianCancer", 0.3}, {"Cancer", 0.2}})},
      {{0, PredicateSlot::wildcard(), 1}});
  const auto x = expand_query_upwards(q, o);
  EXPECT_DOUBLE_EQ(x.components[1].find("OvarianCancer")->score, 0.3);
  EXPECT_DOUBLE_EQ(x.components[1].find("Cancer")->score, 0.2);

  // New concept reached from two sources takes the max.
  const auto two = parse("a\tp\nb\tq\nq\tp\n");
  auto q2 = fixtures::query({fixtures::set("x", {{"D", 1.0}}),
                             fixtures::set("y", {{"a", 0.5}, {"b", 0.9}})},
                            {{0, PredicateSlot::wildcard(), 1}});
  const auto x2 = expand_query_upwards(q2, two);
  // via a: 0.5 * 1/2 = 0.25; via b: 0.9 * 1/3 = 0.3
  EXPECT_DOUBLE_EQ(x2.components[1].find("p")->score, 0.9 / 3.0);
}

TEST(Ontology, ExpansionIdempotentOnConceptIds) {
  const auto o = dag();
  auto q = fixtures::query({fixtures::set("a", {{"D", 1.0}}),
                            fixtures::set("b", {{"OvarianCancerSubtype", 0.7}})},
                           {{0, PredicateSlot::wildcard(), 1}});
  const auto once = expand_query_upwards(q, o);
  const auto twice = expand_query_upwards(once, o);
  ASSERT_EQ(once.components[1].alternatives.size(), twice.components[1].alternatives.size());
  for (const auto& a : twice.components[1].alternatives) {
    const auto* before = once.components[1].find(a.concept_id);
    ASSERT_NE(before, nullptr);
    EXPECT_DOUBLE_EQ(a.score, before->score);
  }
}

TEST(Ontology, ExpandDownwardsInheritsScore) {
  const auto o = dag();
  auto q = fixtures::query({fixtures::set("a", {{"D", 1.0}}),
                            fixtures::set("b", {{"Cancer", 0.6}})},
                           {{0, PredicateSlot::wildcard(), 1}});
  const auto x = expand_query_downwards(q, o);
  const auto& b = x.components[1];
  ASSERT_EQ(b.alternatives.size(), 3u);
  EXPECT_DOUBLE_EQ(b.find("OvarianCancer")->score, 0.6);
  EXPECT_DOUBLE_EQ(b.find("OvarianCancerSubtype")->score, 0.6);
  EXPECT_EQ(b.find("OvarianCancer")->origin, ConceptOrigin::subclass);
  EXPECT_EQ(b.find("Cancer")->origin, ConceptOrigin::original);
}
