#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graphrank/types.hpp"
#include "graphrank/vocabulary.hpp"

namespace graphrank {

class Ontology;

enum class ConceptOrigin { original, subclass, superclass };

std::string_view to_string(ConceptOrigin o);

struct ExpandedConcept {
  ConceptId concept_id;
  double score = 0.0;  // translation score, possibly ontologically discounted
  ConceptOrigin origin = ConceptOrigin::original;
};

// One query node: the alternatives a user term was translated into.
struct ConceptSet {
  std::string label;  // user term or topic component that produced this set
  std::vector<ExpandedConcept> alternatives;

  const ExpandedConcept* find(const ConceptId& c) const;
  // Inserts `c` or raises an existing entry's score to `c.score`.
  void add_or_raise(const ExpandedConcept& c);
  double best_score() const;
};

// Either a wildcard or a non-empty set of interaction labels.
class PredicateSlot {
 public:
  PredicateSlot() = default;  // wildcard
  static PredicateSlot wildcard() { return {}; }
  static PredicateSlot of(std::set<Predicate> labels);

  bool is_wildcard() const { return labels_.empty(); }
  bool accepts(const Predicate& p) const { return is_wildcard() || labels_.contains(p); }
  const std::set<Predicate>& labels() const { return labels_; }

  bool operator==(const PredicateSlot&) const = default;
  auto operator<=>(const PredicateSlot&) const = default;

 private:
  std::set<Predicate> labels_;
};

// Subject and object refer to entries of DisjunctiveQuery::components, so a
// component reused by several patterns is the same query node.
struct FactPattern {
  std::size_t subject = 0;
  PredicateSlot predicate;
  std::size_t object = 0;

  bool operator==(const FactPattern&) const = default;
  auto operator<=>(const FactPattern&) const = default;
};

inline constexpr std::size_t kMaxPatterns = 8;
inline constexpr std::size_t kMaxKeywordComponents = 4;

// Conjunction of fact patterns. An empty pattern list is the degenerate
// single-component concept-containment query.
struct NarrativeQuery {
  std::vector<FactPattern> patterns;

  bool operator==(const NarrativeQuery&) const = default;
};

// Disjunction of narrative queries over a shared list of components.
struct DisjunctiveQuery {
  std::vector<ConceptSet> components;
  std::vector<NarrativeQuery> alternatives;
  double query_translation_score = 0.0;
  std::string text;  // original user terms, used as the BM25 query

  bool is_concept_containment() const {
    return components.size() == 1 && alternatives.size() == 1 &&
           alternatives.front().patterns.empty();
  }
};

// Min over components of the component's best concept score; 0 if any
// component is empty.
double query_translation_score(const DisjunctiveQuery& q);

struct TermTriple {
  std::string subject;
  std::optional<Predicate> predicate;  // nullopt = wildcard
  std::string object;
};

// Explicit triples -> one NarrativeQuery. Identical terms share a node.
// Concept sets are subclass-expanded when an ontology is given.
DisjunctiveQuery translate_term_query(const std::vector<TermTriple>& triples,
                                      const Vocabulary& vocabulary,
                                      const Ontology* ontology = nullptr);

struct TopicComponent {
  std::string term;
  std::optional<ConceptType> type;
};

// Spanning trees over k nodes (k^(k-2) of them), each as a list of (i, j)
// edges with i < j, in a fixed deterministic order.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> spanning_trees(std::size_t k);

// k components -> one wildcard-pattern NarrativeQuery per spanning tree.
// k = 1 compiles to a concept-containment query. Throws
// UnsupportedArityError for k > 4 and UntranslatableError naming the first
// component without concepts.
DisjunctiveQuery compile_keyword_topic(const std::vector<TopicComponent>& components,
                                       const Vocabulary& vocabulary,
                                       const Ontology* ontology = nullptr);

// Greedy concept detection; throws UntranslatableError when fewer than two
// concepts are found.
DisjunctiveQuery compile_freetext_topic(std::string_view text, const Vocabulary& vocabulary,
                                        const Ontology* ontology = nullptr);

struct Topic {
  std::string topic_id;
  enum class Kind { keyword, freetext } kind = Kind::keyword;
  std::vector<TopicComponent> components;  // keyword topics
  std::string text;                        // freetext topics; joined terms otherwise
};

std::vector<Topic> load_topics(const std::filesystem::path& source);
std::vector<Topic> load_topics(std::istream& in, const std::string& source_name);

DisjunctiveQuery compile_topic(const Topic& topic, const Vocabulary& vocabulary,
                               const Ontology* ontology = nullptr);

// "subject;predicate;object" with "?" or "*" as the wildcard predicate.
TermTriple parse_term_triple(std::string_view spec);

}  // namespace graphrank
