#include "graphrank/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "graphrank/error.hpp"

namespace graphrank {

namespace {

template <class F>
double min_over(const std::vector<Edge>& edges, F&& f) {
  if (edges.empty()) return 0.0;
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : edges) m = std::min(m, f(e));
  return m;
}

bool ranked_before(const ScoredDocument& a, const ScoredDocument& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.doc_id < b.doc_id;
}

}  // namespace

PredicateTaxonomy PredicateTaxonomy::defaults() {
  PredicateTaxonomy t;
  for (const char* p : {"administered", "causes", "compares", "decreases", "induces", "inhibits",
                        "metabolises", "prevents", "treats", "increases", "expresses"}) {
    t.set_level(p, 1);
  }
  for (const char* p : {"interacts", "regulates"}) t.set_level(p, 2);
  t.set_level("associated", 3);
  return t;
}

double PredicateTaxonomy::level_specificity(int level) {
  switch (level) {
    case 1: return 1.0;
    case 2: return 0.5;
    case 3: return 0.25;
    default: throw InputError("predicate level " + std::to_string(level) + " not in 1..3");
  }
}

void PredicateTaxonomy::set_level(const Predicate& p, int level) {
  specificity_[p] = level_specificity(level);
}

double PredicateTaxonomy::specificity(const Predicate& p) const {
  auto it = specificity_.find(p);
  if (it == specificity_.end()) {
    throw MissingSpecificityError("no specificity configured for predicate '" + p + "'");
  }
  return it->second;
}

void Weights::validate() const {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0 && x <= 1.0)) throw InputError("weight outside [0,1]");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("weights must sum to 1");
}

Weights Weights::unit(std::size_t component) {
  Weights u{{0.0, 0.0, 0.0, 0.0}};
  u.w.at(component) = 1.0;
  return u;
}

std::string_view to_string(MatchClass c) {
  return c == MatchClass::full ? "full" : "partial";
}

DocumentContext context_for(const Corpus& corpus, DocIndex d, const PredicateTaxonomy& taxonomy) {
  return {corpus.graph(d), corpus.profile(d), corpus.stats(), taxonomy};
}

double edge_conf(const Edge& e, const DocumentGraph& g) {
  const auto* rec = g.find(e);
  if (rec == nullptr) throw InternalInconsistency("edge " + to_string(e) + " not in " + g.doc_id);
  return rec->max_confidence;
}

double fragment_confidence(const Fragment& f, const DocumentGraph& g) {
  return min_over(f.edges, [&](const Edge& e) { return edge_conf(e, g); });
}

double edge_tfidf(const Edge& e, const DocumentProfile& profile, const CorpusStats& stats,
                  const PredicateTaxonomy& taxonomy) {
  return (concept_tf(e.subject, profile) * concept_idf(e.subject, stats) +
          concept_tf(e.object, profile) * concept_idf(e.object, stats)) *
         taxonomy.specificity(e.predicate);
}

double fragment_min_tfidf(const Fragment& f, const DocumentProfile& profile,
                          const CorpusStats& stats, const PredicateTaxonomy& taxonomy) {
  return min_over(f.edges,
                  [&](const Edge& e) { return edge_tfidf(e, profile, stats, taxonomy); });
}

double edge_coverage(const Edge& e, const DocumentProfile& profile) {
  return std::min(concept_coverage(e.subject, profile), concept_coverage(e.object, profile));
}

double fragment_coverage(const Fragment& f, const DocumentProfile& profile) {
  const auto nodes = f.nodes();
  if (nodes.empty()) return 0.0;
  double m = 1.0;
  for (const auto& c : nodes) m = std::min(m, concept_coverage(c, profile));
  return m;
}

std::vector<Edge> neighbor_edges(const Edge& e, const DocumentGraph& g) {
  std::vector<Edge> out;
  for (const auto& [n, _] : g.edges) {
    const bool touches = n.subject == e.subject || n.subject == e.object ||
                         n.object == e.subject || n.object == e.object;
    const bool same_pair = (n.subject == e.subject && n.object == e.object) ||
                           (n.subject == e.object && n.object == e.subject);
    if (touches && !same_pair) out.push_back(n);
  }
  return out;
}

double edge_score(const Edge& e, const DocumentContext& ctx) {
  return (edge_tfidf(e, ctx.profile, ctx.stats, ctx.taxonomy) + edge_coverage(e, ctx.profile) +
          edge_conf(e, ctx.graph)) /
         3.0;
}

double relational_similarity(const Fragment& f, const DocumentContext& ctx) {
  double sum = 0.0;
  for (const auto& e : f.edges) {
    for (const auto& n : neighbor_edges(e, ctx.graph)) sum += edge_score(n, ctx);
  }
  return sum;
}

double fragment_translation(const Fragment& f, const std::vector<ConceptSet>& components) {
  double m = 1.0;
  bool any = false;
  for (std::size_t i = 0; i < f.node_bindings.size() && i < components.size(); ++i) {
    if (!f.node_bindings[i]) continue;
    const auto* c = components[i].find(*f.node_bindings[i]);
    if (c == nullptr) {
      throw InternalInconsistency("fragment binds '" + *f.node_bindings[i] +
                                  "' outside its component");
    }
    m = std::min(m, c->score);
    any = true;
  }
  return any ? m : 0.0;
}

SimilarityVector similarity(const Fragment& f, const std::vector<ConceptSet>& components,
                            const DocumentContext& ctx) {
  SimilarityVector s;
  s.confidence = fragment_confidence(f, ctx.graph);
  s.min_tfidf = fragment_min_tfidf(f, ctx.profile, ctx.stats, ctx.taxonomy);
  s.coverage = fragment_coverage(f, ctx.profile);
  s.relational = relational_similarity(f, ctx);
  s.translation = fragment_translation(f, components);
  return s;
}

std::vector<double> normalize_and_combine(const std::vector<SimilarityVector>& sims,
                                          const Weights& weights) {
  std::array<double, 4> max{0.0, 0.0, 0.0, 0.0};
  for (const auto& s : sims) {
    const auto c = s.components();
    for (std::size_t i = 0; i < 4; ++i) max[i] = std::max(max[i], c[i]);
  }
  std::vector<double> out;
  out.reserve(sims.size());
  for (const auto& s : sims) {
    const auto c = s.components();
    double combined = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (max[i] > 0.0) combined += weights.w[i] * (c[i] / max[i]);
    }
    out.push_back(s.translation * combined);
  }
  return out;
}

std::vector<ScoredDocument> graph_rank(const DisjunctiveQuery& q,
                                       const std::map<DocId, std::vector<Fragment>>& docs,
                                       MatchClass match_class, const Corpus& corpus,
                                       const PredicateTaxonomy& taxonomy, const Weights& weights) {
  // Flatten all fragments of the candidate set; normalization spans all of them.
  struct Entry {
    const DocId* doc;
    const Fragment* fragment;
  };
  std::vector<Entry> entries;
  std::vector<SimilarityVector> sims;
  std::vector<double> containment_raw;
  for (const auto& [doc_id, fragments] : docs) {
    const auto d = corpus.find(doc_id);
    if (!d) throw InternalInconsistency("matched document '" + doc_id + "' not in corpus");
    const auto ctx = context_for(corpus, *d, taxonomy);
    for (const auto& f : fragments) {
      entries.push_back({&doc_id, &f});
      if (f.edges.empty()) {
        // Edgeless concept-containment fragment: tf * idf * coverage.
        const auto nodes = f.nodes();
        double raw = 0.0;
        for (const auto& c : nodes) {
          raw = std::max(raw, concept_tf(c, ctx.profile) * concept_idf(c, ctx.stats) *
                                  concept_coverage(c, ctx.profile));
        }
        containment_raw.push_back(raw);
        sims.push_back({0, 0, 0, 0, fragment_translation(f, q.components)});
      } else {
        containment_raw.push_back(0.0);
        sims.push_back(similarity(f, q.components, ctx));
      }
    }
  }

  std::vector<double> fscores = normalize_and_combine(sims, weights);
  const double containment_max =
      containment_raw.empty() ? 0.0 : *std::max_element(containment_raw.begin(),
                                                        containment_raw.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].fragment->edges.empty()) continue;
    fscores[i] = containment_max > 0.0
                     ? sims[i].translation * (containment_raw[i] / containment_max)
                     : 0.0;
  }

  std::map<DocId, ScoredDocument> best;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto [it, inserted] = best.try_emplace(*entries[i].doc);
    auto& sd = it->second;
    if (inserted || fscores[i] > sd.score) {
      sd = {*entries[i].doc, fscores[i], match_class, *entries[i].fragment};
    }
  }
  std::vector<ScoredDocument> out;
  out.reserve(best.size());
  for (auto& [_, sd] : best) out.push_back(std::move(sd));
  std::sort(out.begin(), out.end(), ranked_before);
  return out;
}

std::vector<ScoredDocument> assemble_final_ranking(const std::vector<ScoredDocument>& full,
                                                   const std::vector<ScoredDocument>& partial,
                                                   std::size_t cutoff) {
  std::set<DocId> seen;
  for (const auto& d : full) seen.insert(d.doc_id);
  for (const auto& d : partial) {
    if (seen.contains(d.doc_id)) {
      throw InternalInconsistency("document '" + d.doc_id + "' is both a full and partial match");
    }
  }
  std::vector<ScoredDocument> out;
  out.reserve(std::min(cutoff, full.size() + partial.size()));
  for (const auto* list : {&full, &partial}) {
    for (const auto& d : *list) {
      if (out.size() == cutoff) return out;
      out.push_back(d);
    }
  }
  return out;
}

}  // namespace graphrank
