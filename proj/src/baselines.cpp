#include "graphrank/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "graphrank/error.hpp"
#include "graphrank/vocabulary.hpp"

namespace graphrank {

namespace {

const std::vector<TextIndex::Posting>* find_postings(const TextIndex& index,
                                                     const std::string& token) {
  auto it = index.postings.find(token);
  return it == index.postings.end() ? nullptr : &it->second;
}

double term_weight(const TextIndex& index, const BM25Params& p, std::size_t tf, DocIndex d,
                   double idf) {
  const double len = static_cast<double>(index.doc_length[d]);
  const double norm = index.avg_length > 0.0 ? len / index.avg_length : 0.0;
  const double tfd = static_cast<double>(tf);
  return idf * tfd * (p.k1 + 1.0) / (tfd + p.k1 * (1.0 - p.b + p.b * norm));
}

bool hit_before(const TextHit& a, const TextHit& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.doc_id < b.doc_id;
}

}  // namespace

void BM25Params::validate() const {
  if (!(k1 > 0.0)) throw InputError("bm25 k1 must be > 0");
  if (!(b >= 0.0 && b <= 1.0)) throw InputError("bm25 b must be in [0,1]");
}

std::size_t TextIndex::df(const std::string& token) const {
  const auto* p = find_postings(*this, token);
  return p == nullptr ? 0 : p->size();
}

std::size_t TextIndex::tf(const std::string& token, DocIndex d) const {
  const auto* p = find_postings(*this, token);
  if (p == nullptr) return 0;
  auto it = std::lower_bound(p->begin(), p->end(), d,
                             [](const Posting& x, DocIndex v) { return x.doc < v; });
  return it != p->end() && it->doc == d ? it->tf : 0;
}

TextIndex build_text_index(const Corpus& corpus) {
  TextIndex index;
  std::size_t total = 0;
  for (DocIndex d = 0; d < corpus.size(); ++d) {
    const auto& doc = corpus.document(d);
    std::map<std::string, std::size_t> counts;
    for (const auto& t : doc.tokens) ++counts[t];
    for (const auto& [t, n] : counts) index.postings[t].push_back({d, n});
    index.doc_length.push_back(doc.tokens.size());
    index.doc_ids.push_back(doc.doc_id);
    total += doc.tokens.size();
  }
  index.avg_length = corpus.empty() ? 0.0
                                    : static_cast<double>(total) / static_cast<double>(corpus.size());
  return index;
}

double bm25_idf(std::size_t doc_count, std::size_t df) {
  const double n = static_cast<double>(doc_count);
  const double f = static_cast<double>(df);
  return std::log((n - f + 0.5) / (f + 0.5) + 1.0);
}

double bm25_score(const std::vector<std::string>& query_tokens, DocIndex d,
                  const TextIndex& index, const BM25Params& params) {
  double score = 0.0;
  for (const auto& t : query_tokens) {
    const auto tf = index.tf(t, d);
    if (tf == 0) continue;
    score += term_weight(index, params, tf, d, bm25_idf(index.doc_count(), index.df(t)));
  }
  return score;
}

std::vector<TextHit> bm25_rerank(std::string_view query_text, const std::vector<DocId>& candidates,
                                 const TextIndex& index, const BM25Params& params) {
  std::unordered_map<DocId, DocIndex> position;
  for (DocIndex d = 0; d < index.doc_ids.size(); ++d) position.emplace(index.doc_ids[d], d);
  const auto tokens = tokenize(query_text);
  std::vector<TextHit> out;
  for (const auto& id : candidates) {
    auto it = position.find(id);
    if (it == position.end()) continue;
    out.push_back({id, bm25_score(tokens, it->second, index, params)});
  }
  std::sort(out.begin(), out.end(), hit_before);
  return out;
}

std::vector<TextHit> bm25_retrieve(std::string_view query_text, std::size_t k,
                                   const TextIndex& index, const BM25Params& params,
                                   const Scope* scope) {
  // Term-at-a-time accumulation over postings.
  std::unordered_map<DocIndex, double> acc;
  for (const auto& t : tokenize(query_text)) {
    const auto* postings = find_postings(index, t);
    if (postings == nullptr) continue;
    const double idf = bm25_idf(index.doc_count(), postings->size());
    for (const auto& p : *postings) acc[p.doc] += term_weight(index, params, p.tf, p.doc, idf);
  }
  std::vector<TextHit> hits;
  for (const auto& [d, score] : acc) {
    if (score <= 0.0) continue;
    if (scope != nullptr && !scope->contains(index.doc_ids[d])) continue;
    hits.push_back({index.doc_ids[d], score});
  }
  const auto keep = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                    hit_before);
  hits.resize(keep);
  return hits;
}

}  // namespace graphrank
