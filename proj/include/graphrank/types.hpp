#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace graphrank {

using ConceptId = std::string;
using DocId = std::string;
using Predicate = std::string;

// Dense handle into a Corpus' document table.
using DocIndex = std::uint32_t;

// A directed, labeled document-graph edge. Ordering is lexicographic on
// (subject, predicate, object), which fixes enumeration order everywhere.
struct Edge {
  ConceptId subject;
  Predicate predicate;
  ConceptId object;

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

inline std::string to_string(const Edge& e) {
  return "(" + e.subject + ", " + e.predicate + ", " + e.object + ")";
}

}  // namespace graphrank
