#include "graphrank/engine.hpp"

#include <algorithm>
#include <set>

#include "graphrank/error.hpp"

namespace graphrank {

namespace {

std::vector<SearchHit> to_hits(const std::vector<ScoredDocument>& docs) {
  std::vector<SearchHit> hits;
  hits.reserve(docs.size());
  for (const auto& d : docs) hits.push_back({d.doc_id, d.score, d.match_class, d.best_fragment});
  return hits;
}

std::vector<SearchHit> rerank_class(const DisjunctiveQuery& q,
                                    const std::map<DocId, std::vector<Fragment>>& docs,
                                    MatchClass match_class, const Engine& engine) {
  std::vector<DocId> ids;
  for (const auto& [id, _] : docs) ids.push_back(id);
  std::vector<SearchHit> hits;
  for (auto& h : bm25_rerank(q.text, ids, engine.text(), engine.config().bm25)) {
    const auto& frags = docs.at(h.doc_id);
    hits.push_back({h.doc_id, h.score, match_class,
                    frags.empty() ? std::nullopt : std::optional<Fragment>(frags.front())});
  }
  return hits;
}

std::vector<SearchHit> id_order_class(const std::map<DocId, std::vector<Fragment>>& docs,
                                      MatchClass match_class) {
  std::vector<SearchHit> hits;
  for (auto it = docs.rbegin(); it != docs.rend(); ++it) {
    hits.push_back({it->first, 0.0, match_class,
                    it->second.empty() ? std::nullopt
                                       : std::optional<Fragment>(it->second.front())});
  }
  return hits;
}

}  // namespace

std::string_view to_string(RankerMode m) {
  switch (m) {
    case RankerMode::graphrank: return "graphrank";
    case RankerMode::bm25_rerank: return "bm25-rerank";
    case RankerMode::bm25_native: return "bm25-native";
    case RankerMode::none: return "none";
  }
  return "none";
}

std::optional<RankerMode> parse_ranker_mode(std::string_view s) {
  for (auto m : {RankerMode::graphrank, RankerMode::bm25_rerank, RankerMode::bm25_native,
                 RankerMode::none}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

std::string SearchMode::name() const {
  if (ranker == RankerMode::bm25_native) return "Native BM25 (Baseline)";
  std::string n = partial ? "Partial Match" : "Full Match";
  if (expand_ontology) n += " + Ontology";
  if (ranker == RankerMode::graphrank) n += " + GraphRank";
  if (ranker == RankerMode::bm25_rerank) n += " + BM25";
  return n;
}

std::string SearchMode::slug() const {
  if (ranker == RankerMode::bm25_native) return "bm25_native";
  std::string s = partial ? "partial" : "full";
  if (expand_ontology) s += "_ontology";
  if (ranker == RankerMode::graphrank) s += "_graphrank";
  if (ranker == RankerMode::bm25_rerank) s += "_bm25";
  return s;
}

Engine::Engine(Corpus corpus, Vocabulary vocabulary, Ontology ontology, EngineConfig config)
    : corpus_(std::move(corpus)),
      vocabulary_(std::move(vocabulary)),
      ontology_(std::move(ontology)),
      config_(std::move(config)),
      statements_(build_statement_index(corpus_)),
      text_(build_text_index(corpus_)) {
  config_.weights.validate();
  config_.bm25.validate();
}

DisjunctiveQuery Engine::translate(const std::vector<TermTriple>& triples) const {
  return translate_term_query(triples, vocabulary_, &ontology_);
}

DisjunctiveQuery Engine::compile(const Topic& topic) const {
  return compile_topic(topic, vocabulary_, &ontology_);
}

std::vector<SearchHit> Engine::search(const DisjunctiveQuery& query, const SearchMode& mode,
                                      const Scope* scope) const {
  if (mode.cutoff == 0) throw InputError("cutoff must be >= 1");
  if (mode.ranker == RankerMode::bm25_native) {
    std::vector<SearchHit> hits;
    for (auto& h : bm25_retrieve(query.text, mode.cutoff, text_, config_.bm25, scope)) {
      hits.push_back({h.doc_id, h.score, MatchClass::full, std::nullopt});
    }
    return hits;
  }

  const DisjunctiveQuery q = mode.expand_ontology ? expand_query_upwards(query, ontology_) : query;
  auto matched = retrieve(q, statements_, corpus_, scope);
  if (!mode.partial) matched.partial.clear();

  std::vector<SearchHit> full;
  std::vector<SearchHit> partial;
  switch (mode.ranker) {
    case RankerMode::graphrank: {
      const auto f = graph_rank(q, matched.full, MatchClass::full, corpus_, config_.taxonomy,
                                config_.weights);
      const auto p = graph_rank(q, matched.partial, MatchClass::partial, corpus_,
                                config_.taxonomy, config_.weights);
      return to_hits(assemble_final_ranking(f, p, mode.cutoff));
    }
    case RankerMode::bm25_rerank:
      full = rerank_class(q, matched.full, MatchClass::full, *this);
      partial = rerank_class(q, matched.partial, MatchClass::partial, *this);
      break;
    case RankerMode::none:
      full = id_order_class(matched.full, MatchClass::full);
      partial = id_order_class(matched.partial, MatchClass::partial);
      break;
    case RankerMode::bm25_native:
      break;
  }
  std::set<DocId> seen;
  for (const auto& h : full) seen.insert(h.doc_id);
  std::vector<SearchHit> out = std::move(full);
  for (auto& h : partial) {
    if (seen.contains(h.doc_id)) {
      throw InternalInconsistency("document '" + h.doc_id + "' is both a full and partial match");
    }
    out.push_back(std::move(h));
  }
  if (out.size() > mode.cutoff) out.resize(mode.cutoff);
  return out;
}

std::vector<RunEntry> to_run_entries(const std::vector<SearchHit>& hits, RankerMode ranker) {
  std::vector<RunEntry> out;
  out.reserve(hits.size());
  if (ranker == RankerMode::none) {
    for (std::size_t i = 0; i < hits.size(); ++i) {
      out.push_back({hits[i].doc_id, static_cast<double>(hits.size() - i)});
    }
    return out;
  }
  double min_full = 0.0;
  double max_partial = 0.0;
  bool any_full = false;
  bool any_partial = false;
  for (const auto& h : hits) {
    if (h.match_class == MatchClass::full) {
      min_full = any_full ? std::min(min_full, h.score) : h.score;
      any_full = true;
    } else {
      max_partial = any_partial ? std::max(max_partial, h.score) : h.score;
      any_partial = true;
    }
  }
  const double shift =
      any_full && any_partial && max_partial >= min_full ? max_partial - min_full + 1.0 : 0.0;
  for (const auto& h : hits) {
    out.push_back({h.doc_id, h.match_class == MatchClass::partial ? h.score - shift : h.score});
  }
  return out;
}

}  // namespace graphrank
