#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "graphrank/corpus.hpp"
#include "graphrank/matcher.hpp"

namespace graphrank {

struct BM25Params {
  double k1 = 1.2;
  double b = 0.75;

  void validate() const;  // throws InputError
};

// Inverted index over the corpus' pre-tokenized documents.
struct TextIndex {
  struct Posting {
    DocIndex doc = 0;
    std::size_t tf = 0;
  };
  std::map<std::string, std::vector<Posting>> postings;  // sorted by doc
  std::vector<std::size_t> doc_length;
  std::vector<DocId> doc_ids;
  double avg_length = 0.0;

  std::size_t doc_count() const { return doc_length.size(); }
  std::size_t df(const std::string& token) const;
  std::size_t tf(const std::string& token, DocIndex d) const;
};

struct TextHit {
  DocId doc_id;
  double score = 0.0;
};

TextIndex build_text_index(const Corpus& corpus);

// ln((N - df + 0.5) / (df + 0.5) + 1)
double bm25_idf(std::size_t doc_count, std::size_t df);

// Query tokens are scored as a multiset; tokens absent from the doc add 0.
double bm25_score(const std::vector<std::string>& query_tokens, DocIndex d,
                  const TextIndex& index, const BM25Params& params = {});

// Candidates sorted by (bm25 desc, doc_id asc). Unknown doc ids are dropped.
std::vector<TextHit> bm25_rerank(std::string_view query_text, const std::vector<DocId>& candidates,
                                 const TextIndex& index, const BM25Params& params = {});

// Top-k documents within scope with a positive score.
std::vector<TextHit> bm25_retrieve(std::string_view query_text, std::size_t k,
                                   const TextIndex& index, const BM25Params& params = {},
                                   const Scope* scope = nullptr);

}  // namespace graphrank
