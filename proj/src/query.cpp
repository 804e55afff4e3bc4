#include "graphrank/query.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>

#include "graphrank/error.hpp"
#include "graphrank/ontology.hpp"

namespace graphrank {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

ConceptSet translate_component(const std::string& term, std::optional<ConceptType> type,
                               const Vocabulary& vocabulary) {
  ConceptSet set;
  set.label = term;
  for (auto& tr : vocabulary.find_concepts(term, type)) {
    set.alternatives.push_back({tr.concept_id, tr.translation_score, ConceptOrigin::original});
  }
  if (set.alternatives.empty()) {
    throw UntranslatableError("term '" + term + "' does not match any concept");
  }
  return set;
}

DisjunctiveQuery finish(DisjunctiveQuery q, const Ontology* ontology) {
  if (ontology != nullptr && !ontology->empty()) q = expand_query_downwards(q, *ontology);
  q.query_translation_score = query_translation_score(q);
  return q;
}

}  // namespace

std::string_view to_string(ConceptOrigin o) {
  switch (o) {
    case ConceptOrigin::original: return "original";
    case ConceptOrigin::subclass: return "subclass";
    case ConceptOrigin::superclass: return "superclass";
  }
  return "original";
}

const ExpandedConcept* ConceptSet::find(const ConceptId& c) const {
  auto it = std::find_if(alternatives.begin(), alternatives.end(),
                         [&](const auto& a) { return a.concept_id == c; });
  return it == alternatives.end() ? nullptr : &*it;
}

void ConceptSet::add_or_raise(const ExpandedConcept& c) {
  auto it = std::find_if(alternatives.begin(), alternatives.end(),
                         [&](const auto& a) { return a.concept_id == c.concept_id; });
  if (it == alternatives.end()) {
    alternatives.push_back(c);
  } else if (c.score > it->score) {
    it->score = c.score;
    it->origin = c.origin;
  }
}

double ConceptSet::best_score() const {
  double best = 0.0;
  for (const auto& a : alternatives) best = std::max(best, a.score);
  return best;
}

PredicateSlot PredicateSlot::of(std::set<Predicate> labels) {
  if (labels.empty()) throw InputError("predicate slot with an empty label set");
  PredicateSlot slot;
  slot.labels_ = std::move(labels);
  return slot;
}

double query_translation_score(const DisjunctiveQuery& q) {
  if (q.components.empty()) return 0.0;
  double score = 1.0;
  for (const auto& c : q.components) score = std::min(score, c.best_score());
  return score;
}

DisjunctiveQuery translate_term_query(const std::vector<TermTriple>& triples,
                                      const Vocabulary& vocabulary, const Ontology* ontology) {
  if (triples.empty()) throw InputError("query without fact patterns");
  if (triples.size() > kMaxPatterns) {
    throw UnsupportedArityError("query has " + std::to_string(triples.size()) +
                                " patterns; at most " + std::to_string(kMaxPatterns) +
                                " are supported");
  }
  DisjunctiveQuery q;
  std::map<std::vector<std::string>, std::size_t> node_of;
  auto node = [&](const std::string& term) {
    auto key = tokenize(term);
    if (auto it = node_of.find(key); it != node_of.end()) return it->second;
    q.components.push_back(translate_component(term, std::nullopt, vocabulary));
    node_of.emplace(std::move(key), q.components.size() - 1);
    return q.components.size() - 1;
  };

  NarrativeQuery nq;
  std::vector<std::string> terms;
  for (const auto& t : triples) {
    FactPattern p;
    p.subject = node(t.subject);
    p.object = node(t.object);
    if (p.subject == p.object) {
      throw InputError("pattern relates term '" + t.subject + "' to itself");
    }
    p.predicate = t.predicate ? PredicateSlot::of({*t.predicate}) : PredicateSlot::wildcard();
    nq.patterns.push_back(std::move(p));
    terms.push_back(t.subject);
    terms.push_back(t.object);
  }
  q.alternatives.push_back(std::move(nq));
  q.text = std::accumulate(std::next(terms.begin()), terms.end(), terms.front(),
                           [](std::string a, const std::string& b) { return a + " " + b; });
  return finish(std::move(q), ontology);
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> spanning_trees(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> all_edges;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) all_edges.emplace_back(i, j);
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> trees;
  if (k < 2) return trees;

  // Every (k-1)-subset of the complete graph's edges that is acyclic is a tree.
  std::vector<bool> pick(all_edges.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k - 1), true);
  do {
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::pair<std::size_t, std::size_t>> tree;
    bool acyclic = true;
    for (std::size_t e = 0; e < all_edges.size() && acyclic; ++e) {
      if (!pick[e]) continue;
      const auto a = root(all_edges[e].first);
      const auto b = root(all_edges[e].second);
      acyclic = a != b;
      parent[a] = b;
      tree.push_back(all_edges[e]);
    }
    if (acyclic) trees.push_back(std::move(tree));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return trees;
}

DisjunctiveQuery compile_keyword_topic(const std::vector<TopicComponent>& components,
                                       const Vocabulary& vocabulary, const Ontology* ontology) {
  const auto k = components.size();
  if (k == 0) throw UntranslatableError("topic without components");
  if (k > kMaxKeywordComponents) {
    throw UnsupportedArityError("topic has " + std::to_string(k) + " components; at most " +
                                std::to_string(kMaxKeywordComponents) + " are supported");
  }
  DisjunctiveQuery q;
  for (const auto& c : components) {
    q.components.push_back(translate_component(c.term, c.type, vocabulary));
    q.text += (q.text.empty() ? "" : " ") + c.term;
  }
  if (k == 1) {
    q.alternatives.push_back(NarrativeQuery{});
  } else {
    for (const auto& tree : spanning_trees(k)) {
      NarrativeQuery nq;
      for (const auto& [i, j] : tree) nq.patterns.push_back({i, PredicateSlot::wildcard(), j});
      q.alternatives.push_back(std::move(nq));
    }
  }
  return finish(std::move(q), ontology);
}

DisjunctiveQuery compile_freetext_topic(std::string_view text, const Vocabulary& vocabulary,
                                        const Ontology* ontology) {
  const auto spans = greedy_concept_detection(text, vocabulary);
  if (spans.size() < 2) {
    throw UntranslatableError("topic '" + std::string(text) + "' maps to " +
                              std::to_string(spans.size()) + " concept(s); at least 2 required");
  }
  std::vector<TopicComponent> components;
  for (const auto& s : spans) {
    if (components.size() == kMaxKeywordComponents) {
      throw UnsupportedArityError("topic '" + std::string(text) + "' maps to more than " +
                                  std::to_string(kMaxKeywordComponents) + " concepts");
    }
    components.push_back({s.text, std::nullopt});
  }
  auto q = compile_keyword_topic(components, vocabulary, ontology);
  q.text = std::string(text);
  return q;
}

TermTriple parse_term_triple(std::string_view spec) {
  const auto parts = split(spec, ';');
  if (parts.size() != 3) {
    throw InputError("triple '" + std::string(spec) + "' must be 'subject;predicate;object'");
  }
  TermTriple t{trim(parts[0]), std::nullopt, trim(parts[2])};
  const auto pred = trim(parts[1]);
  if (t.subject.empty() || t.object.empty()) {
    throw InputError("triple '" + std::string(spec) + "' has an empty term");
  }
  if (!pred.empty() && pred != "?" && pred != "*") t.predicate = pred;
  return t;
}

std::vector<Topic> load_topics(std::istream& in, const std::string& source_name) {
  std::vector<Topic> topics;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw InputError(source_name, line_no, "expected 'topic_id<TAB>kind<TAB>query'");
    }
    Topic t;
    t.topic_id = trim(fields[0]);
    if (t.topic_id.empty()) throw InputError(source_name, line_no, "empty topic id");
    const auto kind = trim(fields[1]);
    if (kind == "keyword") {
      t.kind = Topic::Kind::keyword;
      for (const auto& raw : split(fields[2], '|')) {
        auto part = trim(raw);
        if (part.empty()) continue;
        TopicComponent c{part, std::nullopt};
        if (const auto colon = part.rfind(':'); colon != std::string::npos) {
          auto type = parse_concept_type(trim(part.substr(colon + 1)));
          if (!type) {
            throw InputError(source_name, line_no,
                             "unknown component type in '" + part + "'");
          }
          c = {trim(part.substr(0, colon)), type};
        }
        t.text += (t.text.empty() ? "" : " ") + c.term;
        t.components.push_back(std::move(c));
      }
      if (t.components.empty()) throw InputError(source_name, line_no, "topic without components");
    } else if (kind == "freetext") {
      t.kind = Topic::Kind::freetext;
      t.text = trim(fields[2]);
      if (t.text.empty()) throw InputError(source_name, line_no, "empty freetext query");
    } else {
      throw InputError(source_name, line_no, "unknown topic kind '" + kind + "'");
    }
    topics.push_back(std::move(t));
  }
  return topics;
}

std::vector<Topic> load_topics(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw InputError(source.string(), 0, "cannot open topics file");
  return load_topics(in, source.string());
}

DisjunctiveQuery compile_topic(const Topic& topic, const Vocabulary& vocabulary,
                               const Ontology* ontology) {
  if (topic.kind == Topic::Kind::freetext) {
    return compile_freetext_topic(topic.text, vocabulary, ontology);
  }
  auto q = compile_keyword_topic(topic.components, vocabulary, ontology);
  q.text = topic.text;
  return q;
}

}  // namespace graphrank
