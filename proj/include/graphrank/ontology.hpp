#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "graphrank/types.hpp"

namespace graphrank {

class Vocabulary;
struct DisjunctiveQuery;

// Subclass DAG over concept ids. Acyclicity is checked on construction.
class Ontology {
 public:
  Ontology() = default;
  // (child, parent) edges. Throws InputError on self-loops or cycles.
  static Ontology from_edges(const std::vector<std::pair<ConceptId, ConceptId>>& edges);

  std::size_t edge_count() const { return edge_count_; }
  bool empty() const { return edge_count_ == 0; }

  // All (child, parent) edges in sorted order.
  std::vector<std::pair<ConceptId, ConceptId>> edges() const;

  const std::set<ConceptId>& parents(const ConceptId& c) const;
  const std::set<ConceptId>& children(const ConceptId& c) const;

  // Transitive descendants / ancestors, excluding `c` itself.
  std::set<ConceptId> subclasses(const ConceptId& c) const;
  std::set<ConceptId> superclasses(const ConceptId& c) const;

  // Shortest ancestor path between a and b (either direction), counted in
  // nodes including both endpoints. nullopt when no such path exists.
  std::optional<std::size_t> path_nodes(const ConceptId& a, const ConceptId& b) const;

  // Ancestors of `c` with their shortest path length in nodes.
  std::map<ConceptId, std::size_t> ancestor_distances(const ConceptId& c) const;
  std::map<ConceptId, std::size_t> descendant_distances(const ConceptId& c) const;

 private:
  std::map<ConceptId, std::set<ConceptId>> parents_;
  std::map<ConceptId, std::set<ConceptId>> children_;
  std::size_t edge_count_ = 0;
};

Ontology load_ontology(const std::filesystem::path& source);
Ontology load_ontology(std::istream& in, const std::string& source_name);

// 1 if a == b, 1/|path(a,b)| (node count) along an ancestor chain, else 0.
double ontological_sim(const ConceptId& a, const ConceptId& b, const Ontology& ontology);

// Adds every transitive superclass of every concept in every component as an
// alternative scored ontological_sim(c, super) * score(c). Concepts already
// present keep their score; new concepts reached from several sources keep
// the maximum.
DisjunctiveQuery expand_query_upwards(const DisjunctiveQuery& q, const Ontology& ontology);

// Adds transitive subclasses; each inherits the score of its source concept.
DisjunctiveQuery expand_query_downwards(const DisjunctiveQuery& q, const Ontology& ontology);

}  // namespace graphrank
