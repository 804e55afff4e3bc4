#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "graphrank/corpus.hpp"
#include "graphrank/query.hpp"

namespace graphrank {

inline constexpr std::size_t kFragmentCap = 1024;

// Posting lists over all document graphs. Immutable after build.
struct StatementIndex {
  struct PairPosting {
    DocIndex doc = 0;
    Edge edge;
    auto operator<=>(const PairPosting&) const = default;
  };

  std::map<Edge, std::vector<DocIndex>> triples;
  // Keyed by the unordered concept pair (smaller id first).
  std::map<std::pair<ConceptId, ConceptId>, std::vector<PairPosting>> pairs;
  std::map<ConceptId, std::vector<DocIndex>> concepts;
};

StatementIndex build_statement_index(const Corpus& corpus);

// One embedding of a narrative query into a document graph.
struct Fragment {
  DocId doc_id;
  std::vector<Edge> edges;  // edges[i] binds pattern i
  // Bound concept per query component; nullopt for components the
  // alternative does not use.
  std::vector<std::optional<ConceptId>> node_bindings;

  // Distinct bound edges in sorted order, the identity used for pooling.
  std::vector<Edge> edge_set() const;
  std::vector<ConceptId> nodes() const;
};

struct FragmentList {
  std::vector<Fragment> fragments;
  bool truncated = false;
};

// All distinct injective bindings of the patterns of `q` to edges of `g`.
// Wildcard patterns accept edges in either direction; a component shared by
// several patterns binds one concept; distinct components bind distinct
// concepts and distinct patterns bind distinct edges. Enumeration follows
// pattern order, then edge order; at most `cap` fragments are returned.
FragmentList matches(const NarrativeQuery& q, const std::vector<ConceptSet>& components,
                     const DocumentGraph& g, std::size_t cap = kFragmentCap);

struct MatchResult {
  std::map<DocId, std::vector<Fragment>> full;
  std::map<DocId, std::vector<Fragment>> partial;
  std::set<DocId> truncated;  // documents whose fragment list hit the cap
};

using Scope = std::unordered_set<DocId>;

// Full matches (some alternative matches completely, fragments pooled and
// deduplicated by edge set) and partial matches (some single pattern matches,
// not a full match). Concept-containment queries produce full matches only.
MatchResult retrieve(const DisjunctiveQuery& q, const StatementIndex& index, const Corpus& corpus,
                     const Scope* scope = nullptr);

}  // namespace graphrank
