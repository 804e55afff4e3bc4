#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphrank/corpus.hpp"
#include "graphrank/matcher.hpp"
#include "graphrank/query.hpp"

namespace graphrank {

// Predicate label -> specificity in {1.0, 0.5, 0.25} by taxonomy level 1..3.
class PredicateTaxonomy {
 public:
  PredicateTaxonomy() = default;

  // Built-in three-level taxonomy; "associated" is the only level-3 label.
  static PredicateTaxonomy defaults();
  static double level_specificity(int level);  // throws InputError outside 1..3

  void set_level(const Predicate& p, int level);
  // Throws MissingSpecificityError for unknown labels.
  double specificity(const Predicate& p) const;
  bool contains(const Predicate& p) const { return specificity_.contains(p); }
  const std::map<Predicate, double>& entries() const { return specificity_; }

 private:
  std::map<Predicate, double> specificity_;
};

// Weights for (confidence, min_tfidf, coverage, relational); sum to 1.
struct Weights {
  std::array<double, 4> w{0.25, 0.25, 0.25, 0.25};

  void validate() const;  // throws InputError
  static Weights unit(std::size_t component);
};

struct SimilarityVector {
  double confidence = 0.0;
  double min_tfidf = 0.0;
  double coverage = 0.0;
  double relational = 0.0;
  double translation = 0.0;

  std::array<double, 4> components() const { return {confidence, min_tfidf, coverage, relational}; }
};

enum class MatchClass { full, partial };
std::string_view to_string(MatchClass c);

struct ScoredDocument {
  DocId doc_id;
  double score = 0.0;
  MatchClass match_class = MatchClass::full;
  Fragment best_fragment;
};

// Read-only view of everything scoring needs for one document.
struct DocumentContext {
  const DocumentGraph& graph;
  const DocumentProfile& profile;
  const CorpusStats& stats;
  const PredicateTaxonomy& taxonomy;
};

DocumentContext context_for(const Corpus& corpus, DocIndex d, const PredicateTaxonomy& taxonomy);

double edge_conf(const Edge& e, const DocumentGraph& g);
double fragment_confidence(const Fragment& f, const DocumentGraph& g);

double edge_tfidf(const Edge& e, const DocumentProfile& profile, const CorpusStats& stats,
                  const PredicateTaxonomy& taxonomy);
double fragment_min_tfidf(const Fragment& f, const DocumentProfile& profile,
                          const CorpusStats& stats, const PredicateTaxonomy& taxonomy);

double edge_coverage(const Edge& e, const DocumentProfile& profile);
double fragment_coverage(const Fragment& f, const DocumentProfile& profile);

// Edges incident to either endpoint of `e`, minus every edge whose endpoint
// set is exactly {subject(e), object(e)}.
std::vector<Edge> neighbor_edges(const Edge& e, const DocumentGraph& g);

// mean(edge_tfidf, edge_coverage, edge_conf), all un-normalized.
double edge_score(const Edge& e, const DocumentContext& ctx);
double relational_similarity(const Fragment& f, const DocumentContext& ctx);

// Min over bound nodes of the bound concept's score in its component.
double fragment_translation(const Fragment& f, const std::vector<ConceptSet>& components);

SimilarityVector similarity(const Fragment& f, const std::vector<ConceptSet>& components,
                            const DocumentContext& ctx);

// Max-normalizes each of the four components over `sims` (a column whose max
// is 0 stays 0) and returns translation * sum(w_i * sim_i) per entry.
std::vector<double> normalize_and_combine(const std::vector<SimilarityVector>& sims,
                                          const Weights& weights);

// Scores one match class. Each document gets the max fscore over its
// fragments; sorted by (score desc, doc_id asc).
std::vector<ScoredDocument> graph_rank(const DisjunctiveQuery& q,
                                       const std::map<DocId, std::vector<Fragment>>& docs,
                                       MatchClass match_class, const Corpus& corpus,
                                       const PredicateTaxonomy& taxonomy, const Weights& weights);

inline constexpr std::size_t kDefaultCutoff = 1000;

// full ++ partial, truncated at `cutoff`. Throws InternalInconsistency if the
// two lists share a document.
std::vector<ScoredDocument> assemble_final_ranking(const std::vector<ScoredDocument>& full,
                                                   const std::vector<ScoredDocument>& partial,
                                                   std::size_t cutoff = kDefaultCutoff);

}  // namespace graphrank
