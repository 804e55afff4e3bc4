#include "graphrank/ontology.hpp"

#include <deque>
#include <fstream>
#include <functional>

#include "graphrank/error.hpp"
#include "graphrank/query.hpp"

namespace graphrank {

namespace {

const std::set<ConceptId> kEmpty;

// BFS over `adjacency`; distances are in nodes (direct neighbor -> 2).
std::map<ConceptId, std::size_t> bfs_nodes(const std::map<ConceptId, std::set<ConceptId>>& adjacency,
                                           const ConceptId& start) {
  std::map<ConceptId, std::size_t> dist;
  std::deque<std::pair<ConceptId, std::size_t>> frontier{{start, 1}};
  while (!frontier.empty()) {
    auto [node, d] = frontier.front();
    frontier.pop_front();
    auto it = adjacency.find(node);
    if (it == adjacency.end()) continue;
    for (const auto& next : it->second) {
      if (next == start || dist.contains(next)) continue;
      dist.emplace(next, d + 1);
      frontier.emplace_back(next, d + 1);
    }
  }
  return dist;
}

template <class Transform>
DisjunctiveQuery expand(const DisjunctiveQuery& q, Transform&& transform) {
  DisjunctiveQuery out = q;
  for (auto& component : out.components) {
    std::vector<ExpandedConcept> added;
    for (const auto& source : component.alternatives) transform(source, added);
    ConceptSet fresh;
    for (const auto& c : added) {
      if (component.find(c.concept_id) == nullptr) fresh.add_or_raise(c);
    }
    for (const auto& c : fresh.alternatives) component.alternatives.push_back(c);
  }
  out.query_translation_score = query_translation_score(out);
  return out;
}

}  // namespace

Ontology Ontology::from_edges(const std::vector<std::pair<ConceptId, ConceptId>>& edges) {
  Ontology o;
  for (const auto& [child, parent] : edges) {
    if (child.empty() || parent.empty()) throw InputError("ontology edge with empty concept id");
    if (child == parent) throw InputError("ontology self-loop on '" + child + "'");
    if (o.parents_[child].insert(parent).second) {
      o.children_[parent].insert(child);
      ++o.edge_count_;
    }
  }

  // Iterative three-colour DFS over parent links.
  enum class Mark { fresh, active, done };
  std::map<ConceptId, Mark> mark;
  for (const auto& [root, _] : o.parents_) {
    if (mark[root] != Mark::fresh) continue;
    std::vector<std::pair<ConceptId, std::set<ConceptId>::const_iterator>> stack;
    mark[root] = Mark::active;
    stack.emplace_back(root, o.parents(root).begin());
    while (!stack.empty()) {
      auto& [node, it] = stack.back();
      if (it == o.parents(node).end()) {
        mark[node] = Mark::done;
        stack.pop_back();
        continue;
      }
      const ConceptId next = *it++;
      auto& m = mark[next];
      if (m == Mark::active) throw InputError("ontology cycle through '" + next + "'");
      if (m == Mark::fresh) {
        m = Mark::active;
        stack.emplace_back(next, o.parents(next).begin());
      }
    }
  }
  return o;
}

std::vector<std::pair<ConceptId, ConceptId>> Ontology::edges() const {
  std::vector<std::pair<ConceptId, ConceptId>> out;
  out.reserve(edge_count_);
  for (const auto& [child, ps] : parents_) {
    for (const auto& p : ps) out.emplace_back(child, p);
  }
  return out;
}

const std::set<ConceptId>& Ontology::parents(const ConceptId& c) const {
  auto it = parents_.find(c);
  return it == parents_.end() ? kEmpty : it->second;
}

const std::set<ConceptId>& Ontology::children(const ConceptId& c) const {
  auto it = children_.find(c);
  return it == children_.end() ? kEmpty : it->second;
}

std::map<ConceptId, std::size_t> Ontology::ancestor_distances(const ConceptId& c) const {
  return bfs_nodes(parents_, c);
}

std::map<ConceptId, std::size_t> Ontology::descendant_distances(const ConceptId& c) const {
  return bfs_nodes(children_, c);
}

std::set<ConceptId> Ontology::subclasses(const ConceptId& c) const {
  std::set<ConceptId> out;
  for (const auto& [d, _] : descendant_distances(c)) out.insert(d);
  return out;
}

std::set<ConceptId> Ontology::superclasses(const ConceptId& c) const {
  std::set<ConceptId> out;
  for (const auto& [a, _] : ancestor_distances(c)) out.insert(a);
  return out;
}

std::optional<std::size_t> Ontology::path_nodes(const ConceptId& a, const ConceptId& b) const {
  if (a == b) return 1;
  if (auto up = ancestor_distances(a); up.contains(b)) return up.at(b);
  if (auto down = ancestor_distances(b); down.contains(a)) return down.at(a);
  return std::nullopt;
}

double ontological_sim(const ConceptId& a, const ConceptId& b, const Ontology& ontology) {
  if (a == b) return 1.0;
  const auto n = ontology.path_nodes(a, b);
  return n ? 1.0 / static_cast<double>(*n) : 0.0;
}

DisjunctiveQuery expand_query_upwards(const DisjunctiveQuery& q, const Ontology& ontology) {
  return expand(q, [&](const ExpandedConcept& source, std::vector<ExpandedConcept>& added) {
    for (const auto& [super, nodes] : ontology.ancestor_distances(source.concept_id)) {
      const double sim = 1.0 / static_cast<double>(nodes);
      added.push_back({super, sim * source.score, ConceptOrigin::superclass});
    }
  });
}

DisjunctiveQuery expand_query_downwards(const DisjunctiveQuery& q, const Ontology& ontology) {
  return expand(q, [&](const ExpandedConcept& source, std::vector<ExpandedConcept>& added) {
    for (const auto& [sub, _] : ontology.descendant_distances(source.concept_id)) {
      added.push_back({sub, source.score, ConceptOrigin::subclass});
    }
  });
}

Ontology load_ontology(std::istream& in, const std::string& source_name) {
  std::vector<std::pair<ConceptId, ConceptId>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw InputError(source_name, line_no, "expected 'child<TAB>parent'");
    }
    auto child = line.substr(0, tab);
    auto parent = line.substr(tab + 1);
    if (child.empty() || parent.empty()) {
      throw InputError(source_name, line_no, "empty concept id");
    }
    if (child == parent) throw InputError(source_name, line_no, "self-loop on '" + child + "'");
    edges.emplace_back(std::move(child), std::move(parent));
  }
  try {
    return Ontology::from_edges(edges);
  } catch (const InputError& e) {
    throw InputError(source_name, 0, e.what());
  }
}

Ontology load_ontology(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw InputError(source.string(), 0, "cannot open ontology file");
  return load_ontology(in, source.string());
}

}  // namespace graphrank
