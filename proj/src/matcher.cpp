#include "graphrank/matcher.hpp"

#include <algorithm>
#include <unordered_map>

namespace graphrank {

namespace {

// Component -> concept -> score.
using ConceptLookup = std::vector<std::unordered_map<ConceptId, double>>;

ConceptLookup make_lookup(const std::vector<ConceptSet>& components) {
  ConceptLookup lookup(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (const auto& a : components[i].alternatives) lookup[i].emplace(a.concept_id, a.score);
  }
  return lookup;
}

double binding_score(const std::vector<std::optional<ConceptId>>& bindings,
                     const ConceptLookup& lookup) {
  double score = 1.0;
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    if (bindings[i]) score = std::min(score, lookup[i].at(*bindings[i]));
  }
  return score;
}

class Enumerator {
 public:
  Enumerator(const NarrativeQuery& q, const ConceptLookup& lookup, const DocumentGraph& g,
             std::size_t cap)
      : q_(q), lookup_(lookup), g_(g), cap_(cap), bindings_(lookup.size()) {}

  FragmentList run() {
    edges_.reserve(q_.patterns.size());
    if (cap_ > 0) descend(0);
    return std::move(out_);
  }

 private:
  bool bind(std::size_t component, const ConceptId& c, bool& fresh) {
    fresh = false;
    if (bindings_[component]) return *bindings_[component] == c;
    if (!lookup_[component].contains(c)) return false;
    for (const auto& b : bindings_) {
      if (b && *b == c) return false;  // distinct components, distinct concepts
    }
    bindings_[component] = c;
    fresh = true;
    return true;
  }

  void try_orientation(std::size_t pi, const Edge& e, const ConceptId& s, const ConceptId& o) {
    const auto& p = q_.patterns[pi];
    bool fresh_s = false;
    bool fresh_o = false;
    if (bind(p.subject, s, fresh_s)) {
      if (bind(p.object, o, fresh_o)) {
        edges_.push_back(e);
        descend(pi + 1);
        edges_.pop_back();
        if (fresh_o) bindings_[p.object].reset();
      }
      if (fresh_s) bindings_[p.subject].reset();
    }
  }

  void descend(std::size_t pi) {
    if (done_) return;
    if (pi == q_.patterns.size()) {
      // The same edges bound in another orientation: keep the better-scoring
      // node binding, since that is the one ranking would pick.
      if (auto it = seen_.find(edges_); it != seen_.end()) {
        auto& kept = out_.fragments[it->second];
        if (binding_score(bindings_, lookup_) > binding_score(kept.node_bindings, lookup_)) {
          kept.node_bindings = bindings_;
        }
        return;
      }
      if (out_.fragments.size() == cap_) {
        out_.truncated = true;
        done_ = true;
        return;
      }
      seen_.emplace(edges_, out_.fragments.size());
      out_.fragments.push_back({g_.doc_id, edges_, bindings_});
      return;
    }
    const auto& p = q_.patterns[pi];
    for (const auto& [e, _] : g_.edges) {
      if (done_) return;
      if (!p.predicate.accepts(e.predicate)) continue;
      if (std::find(edges_.begin(), edges_.end(), e) != edges_.end()) continue;
      try_orientation(pi, e, e.subject, e.object);
      if (p.predicate.is_wildcard()) try_orientation(pi, e, e.object, e.subject);
    }
  }

  const NarrativeQuery& q_;
  const ConceptLookup& lookup_;
  const DocumentGraph& g_;
  std::size_t cap_;
  std::vector<std::optional<ConceptId>> bindings_;
  std::vector<Edge> edges_;
  std::map<std::vector<Edge>, std::size_t> seen_;
  FragmentList out_;
  bool done_ = false;
};

// Pools fragments for one document, deduplicated by edge set, capped.
struct Pool {
  std::vector<Fragment> fragments;
  std::map<std::vector<Edge>, std::size_t> seen;
  bool truncated = false;

  void add(FragmentList list, const ConceptLookup& lookup) {
    truncated = truncated || list.truncated;
    for (auto& f : list.fragments) {
      auto key = f.edge_set();
      if (auto it = seen.find(key); it != seen.end()) {
        auto& kept = fragments[it->second];
        if (binding_score(f.node_bindings, lookup) > binding_score(kept.node_bindings, lookup)) {
          kept = std::move(f);
        }
        continue;
      }
      if (fragments.size() == kFragmentCap) {
        truncated = true;
        return;
      }
      seen.emplace(std::move(key), fragments.size());
      fragments.push_back(std::move(f));
    }
  }
};

FactPattern canonical(FactPattern p) {
  if (p.predicate.is_wildcard() && p.object < p.subject) std::swap(p.subject, p.object);
  return p;
}

// Documents containing at least one edge that satisfies `p` on its own.
std::set<DocIndex> pattern_docs(const FactPattern& p, const std::vector<ConceptSet>& components,
                                const StatementIndex& index) {
  std::set<DocIndex> docs;
  for (const auto& s : components[p.subject].alternatives) {
    for (const auto& o : components[p.object].alternatives) {
      if (s.concept_id == o.concept_id) continue;
      auto key = std::minmax(s.concept_id, o.concept_id);
      auto it = index.pairs.find({key.first, key.second});
      if (it == index.pairs.end()) continue;
      for (const auto& posting : it->second) {
        const auto& e = posting.edge;
        if (!p.predicate.accepts(e.predicate)) continue;
        const bool forward = e.subject == s.concept_id && e.object == o.concept_id;
        const bool reverse = p.predicate.is_wildcard() && e.subject == o.concept_id &&
                             e.object == s.concept_id;
        if (forward || reverse) docs.insert(posting.doc);
      }
    }
  }
  return docs;
}

}  // namespace

std::vector<Edge> Fragment::edge_set() const {
  std::vector<Edge> out = edges;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ConceptId> Fragment::nodes() const {
  std::set<ConceptId> out;
  for (const auto& b : node_bindings) {
    if (b) out.insert(*b);
  }
  for (const auto& e : edges) {
    out.insert(e.subject);
    out.insert(e.object);
  }
  return {out.begin(), out.end()};
}

StatementIndex build_statement_index(const Corpus& corpus) {
  StatementIndex index;
  for (DocIndex d = 0; d < corpus.size(); ++d) {
    for (const auto& [e, _] : corpus.graph(d).edges) {
      index.triples[e].push_back(d);
      auto key = std::minmax(e.subject, e.object);
      index.pairs[{key.first, key.second}].push_back({d, e});
    }
    for (const auto& [c, _] : corpus.profile(d).concepts) index.concepts[c].push_back(d);
  }
  return index;
}

FragmentList matches(const NarrativeQuery& q, const std::vector<ConceptSet>& components,
                     const DocumentGraph& g, std::size_t cap) {
  const auto lookup = make_lookup(components);
  return Enumerator(q, lookup, g, cap).run();
}

MatchResult retrieve(const DisjunctiveQuery& q, const StatementIndex& index, const Corpus& corpus,
                     const Scope* scope) {
  MatchResult result;
  auto in_scope = [&](DocIndex d) {
    return scope == nullptr || scope->contains(corpus.document(d).doc_id);
  };

  if (q.is_concept_containment()) {
    std::map<DocIndex, std::set<ConceptId>> hits;
    for (const auto& a : q.components.front().alternatives) {
      auto it = index.concepts.find(a.concept_id);
      if (it == index.concepts.end()) continue;
      for (auto d : it->second) {
        if (in_scope(d)) hits[d].insert(a.concept_id);
      }
    }
    for (const auto& [d, concepts] : hits) {
      auto& frags = result.full[corpus.document(d).doc_id];
      for (const auto& c : concepts) frags.push_back({corpus.document(d).doc_id, {}, {c}});
    }
    return result;
  }

  const auto lookup = make_lookup(q.components);

  std::vector<FactPattern> distinct;
  for (const auto& alt : q.alternatives) {
    for (const auto& p : alt.patterns) {
      auto c = canonical(p);
      if (std::find(distinct.begin(), distinct.end(), c) == distinct.end()) distinct.push_back(c);
    }
  }
  std::vector<std::set<DocIndex>> docs_of(distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    docs_of[i] = pattern_docs(distinct[i], q.components, index);
  }
  auto slot_of = [&](const FactPattern& p) {
    return static_cast<std::size_t>(
        std::find(distinct.begin(), distinct.end(), canonical(p)) - distinct.begin());
  };

  std::map<DocIndex, Pool> full;
  for (const auto& alt : q.alternatives) {
    if (alt.patterns.empty()) continue;
    std::set<DocIndex> candidates = docs_of[slot_of(alt.patterns.front())];
    for (std::size_t i = 1; i < alt.patterns.size() && !candidates.empty(); ++i) {
      const auto& next = docs_of[slot_of(alt.patterns[i])];
      std::set<DocIndex> kept;
      std::set_intersection(candidates.begin(), candidates.end(), next.begin(), next.end(),
                            std::inserter(kept, kept.end()));
      candidates = std::move(kept);
    }
    for (auto d : candidates) {
      if (!in_scope(d)) continue;
      auto list = Enumerator(alt, lookup, corpus.graph(d), kFragmentCap).run();
      if (!list.fragments.empty()) full[d].add(std::move(list), lookup);
    }
  }

  std::map<DocIndex, Pool> partial;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const NarrativeQuery single{{distinct[i]}};
    for (auto d : docs_of[i]) {
      if (!in_scope(d) || full.contains(d)) continue;
      partial[d].add(Enumerator(single, lookup, corpus.graph(d), kFragmentCap).run(), lookup);
    }
  }

  auto emit = [&](std::map<DocIndex, Pool>& pools, std::map<DocId, std::vector<Fragment>>& out) {
    for (auto& [d, pool] : pools) {
      const auto& id = corpus.document(d).doc_id;
      if (pool.truncated) result.truncated.insert(id);
      out.emplace(id, std::move(pool.fragments));
    }
  };
  emit(full, result.full);
  emit(partial, result.partial);
  return result;
}

}  // namespace graphrank
