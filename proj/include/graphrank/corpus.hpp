#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphrank/types.hpp"

namespace graphrank {

struct ConceptMention {
  ConceptId concept_id;
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive
};

// One upstream extraction of a statement from a sentence.
struct StatementExtraction {
  ConceptId subject;
  Predicate predicate;
  ConceptId object;
  double confidence = 0.0;
  std::size_t sentence_index = 0;
};

struct Document {
  DocId doc_id;
  std::size_t text_length = 0;
  std::vector<std::string> tokens;  // lowercase, pre-tokenized (BM25 input)
  std::vector<ConceptMention> mentions;
  std::vector<StatementExtraction> extractions;
};

struct EdgeRecord {
  double max_confidence = 0.0;
  std::size_t support_count = 0;
};

struct DocumentGraph {
  DocId doc_id;
  std::map<Edge, EdgeRecord> edges;

  const EdgeRecord* find(const Edge& e) const {
    auto it = edges.find(e);
    return it == edges.end() ? nullptr : &it->second;
  }
};

// Mention statistics of one concept inside one document.
struct ConceptProfile {
  std::size_t count = 0;
  std::size_t first_start = 0;
  std::size_t last_start = 0;
};

struct DocumentProfile {
  std::size_t text_length = 0;
  std::size_t max_count = 0;  // #(c', d) for the most frequent concept c'
  std::map<ConceptId, ConceptProfile> concepts;

  const ConceptProfile* find(const ConceptId& c) const {
    auto it = concepts.find(c);
    return it == concepts.end() ? nullptr : &it->second;
  }
};

struct CorpusStats {
  std::size_t doc_count = 0;
  std::map<ConceptId, std::size_t> concept_df;
};

// Throws InputError (without location) when `d` violates a document invariant.
void validate_document(const Document& d);

DocumentGraph build_document_graph(const Document& d);
DocumentProfile build_document_profile(const Document& d);

// #(c,d) / #(c',d). Throws AbsentConceptError if `c` is not mentioned.
double concept_tf(const ConceptId& c, const DocumentProfile& profile);
double concept_tf(const ConceptId& c, const Document& d);

// ln(|D| / df(c)); 0 for concepts the corpus never mentions.
double concept_idf(const ConceptId& c, const CorpusStats& stats);

// (last mention start - first mention start) / text_length.
double concept_coverage(const ConceptId& c, const DocumentProfile& profile);
double concept_coverage(const ConceptId& c, const Document& d);

// Immutable after construction; safe for concurrent readers.
class Corpus {
 public:
  Corpus() = default;
  // Validates every document; throws InputError naming the offending doc.
  static Corpus from_documents(std::vector<Document> docs);

  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  const std::vector<Document>& documents() const { return documents_; }
  const Document& document(DocIndex i) const { return documents_[i]; }
  const DocumentGraph& graph(DocIndex i) const { return graphs_[i]; }
  const DocumentProfile& profile(DocIndex i) const { return profiles_[i]; }
  const CorpusStats& stats() const { return stats_; }

  std::optional<DocIndex> find(const DocId& id) const;

 private:
  std::vector<Document> documents_;
  std::vector<DocumentGraph> graphs_;
  std::vector<DocumentProfile> profiles_;
  std::unordered_map<DocId, DocIndex> by_id_;
  CorpusStats stats_;
};

// Line-delimited JSON corpus; one document per line, blank lines ignored.
Corpus ingest_documents(const std::filesystem::path& source);
Corpus ingest_documents(std::istream& in, const std::string& source_name);

// Canonical single-line JSON encoding understood by ingest_documents.
std::string serialize_document(const Document& d);

}  // namespace graphrank
