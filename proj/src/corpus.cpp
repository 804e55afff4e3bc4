#include "graphrank/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "graphrank/error.hpp"
#include "json.hpp"

namespace graphrank {

namespace {

using nlohmann::json;

Document parse_document(const json& j) {
  Document d;
  d.doc_id = j.at("doc_id").get<std::string>();
  const auto len = j.at("text_length").get<std::int64_t>();
  if (len <= 0) throw InputError("document '" + d.doc_id + "': text_length must be > 0");
  d.text_length = static_cast<std::size_t>(len);
  if (j.contains("tokens")) d.tokens = j.at("tokens").get<std::vector<std::string>>();
  for (const auto& m : j.value("mentions", json::array())) {
    const auto start = m.at("start").get<std::int64_t>();
    const auto end = m.at("end").get<std::int64_t>();
    if (start < 0 || end < 0) {
      throw InputError("document '" + d.doc_id + "': negative mention offset");
    }
    d.mentions.push_back({m.at("concept_id").get<std::string>(),
                          static_cast<std::size_t>(start), static_cast<std::size_t>(end)});
  }
  for (const auto& s : j.value("statements", json::array())) {
    const auto sentence = s.value("sentence", std::int64_t{0});
    if (sentence < 0) throw InputError("document '" + d.doc_id + "': negative sentence index");
    d.extractions.push_back({s.at("subject").get<std::string>(),
                             s.at("predicate").get<std::string>(),
                             s.at("object").get<std::string>(), s.at("confidence").get<double>(),
                             static_cast<std::size_t>(sentence)});
  }
  return d;
}

}  // namespace

void validate_document(const Document& d) {
  const std::string who = "document '" + d.doc_id + "'";
  if (d.doc_id.empty()) throw InputError("document with empty doc_id");
  if (d.text_length == 0) throw InputError(who + ": text_length must be > 0");

  std::set<ConceptId> mentioned;
  for (const auto& m : d.mentions) {
    if (m.concept_id.empty()) throw InputError(who + ": mention with empty concept_id");
    if (!(m.start < m.end && m.end <= d.text_length)) {
      throw InputError(who + ": mention of '" + m.concept_id + "' at [" +
                       std::to_string(m.start) + "," + std::to_string(m.end) +
                       ") out of range for text_length " + std::to_string(d.text_length));
    }
    mentioned.insert(m.concept_id);
  }
  for (const auto& s : d.extractions) {
    if (!(s.confidence >= 0.0 && s.confidence <= 1.0)) {
      std::ostringstream os;
      os << who << ": statement " << to_string(Edge{s.subject, s.predicate, s.object})
         << " has confidence " << s.confidence << " outside [0,1]";
      throw InputError(os.str());
    }
    if (s.predicate.empty()) throw InputError(who + ": statement with empty predicate");
    if (s.subject == s.object) {
      throw InputError(who + ": self-loop statement on '" + s.subject + "'");
    }
    for (const auto* c : {&s.subject, &s.object}) {
      if (!mentioned.contains(*c)) {
        throw InputError(who + ": statement references unmentioned concept '" + *c + "'");
      }
    }
  }
}

DocumentGraph build_document_graph(const Document& d) {
  DocumentGraph g;
  g.doc_id = d.doc_id;
  for (const auto& s : d.extractions) {
    auto [it, inserted] = g.edges.try_emplace(Edge{s.subject, s.predicate, s.object});
    auto& rec = it->second;
    rec.max_confidence = inserted ? s.confidence : std::max(rec.max_confidence, s.confidence);
    ++rec.support_count;
  }
  return g;
}

DocumentProfile build_document_profile(const Document& d) {
  DocumentProfile p;
  p.text_length = d.text_length;
  for (const auto& m : d.mentions) {
    auto [it, inserted] = p.concepts.try_emplace(m.concept_id);
    auto& cp = it->second;
    if (inserted) {
      cp.first_start = cp.last_start = m.start;
    } else {
      cp.first_start = std::min(cp.first_start, m.start);
      cp.last_start = std::max(cp.last_start, m.start);
    }
    ++cp.count;
    p.max_count = std::max(p.max_count, cp.count);
  }
  return p;
}

double concept_tf(const ConceptId& c, const DocumentProfile& profile) {
  const auto* cp = profile.find(c);
  if (cp == nullptr) throw AbsentConceptError("concept '" + c + "' not mentioned in document");
  return static_cast<double>(cp->count) / static_cast<double>(profile.max_count);
}

double concept_tf(const ConceptId& c, const Document& d) {
  return concept_tf(c, build_document_profile(d));
}

double concept_idf(const ConceptId& c, const CorpusStats& stats) {
  auto it = stats.concept_df.find(c);
  if (it == stats.concept_df.end() || it->second == 0) return 0.0;
  return std::log(static_cast<double>(stats.doc_count) / static_cast<double>(it->second));
}

double concept_coverage(const ConceptId& c, const DocumentProfile& profile) {
  const auto* cp = profile.find(c);
  if (cp == nullptr) throw AbsentConceptError("concept '" + c + "' not mentioned in document");
  return static_cast<double>(cp->last_start - cp->first_start) /
         static_cast<double>(profile.text_length);
}

double concept_coverage(const ConceptId& c, const Document& d) {
  return concept_coverage(c, build_document_profile(d));
}

Corpus Corpus::from_documents(std::vector<Document> docs) {
  Corpus corpus;
  corpus.documents_ = std::move(docs);
  const auto n = corpus.documents_.size();
  corpus.graphs_.reserve(n);
  corpus.profiles_.reserve(n);
  corpus.stats_.doc_count = n;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = corpus.documents_[i];
    validate_document(d);
    if (!corpus.by_id_.emplace(d.doc_id, static_cast<DocIndex>(i)).second) {
      throw InputError("duplicate doc_id '" + d.doc_id + "'");
    }
    corpus.graphs_.push_back(build_document_graph(d));
    corpus.profiles_.push_back(build_document_profile(d));
    for (const auto& [concept_id, _] : corpus.profiles_.back().concepts) {
      ++corpus.stats_.concept_df[concept_id];
    }
  }
  return corpus;
}

std::optional<DocIndex> Corpus::find(const DocId& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

Corpus ingest_documents(std::istream& in, const std::string& source_name) {
  std::vector<Document> docs;
  std::unordered_map<DocId, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto d = parse_document(json::parse(line));
      validate_document(d);
      if (auto [it, ok] = seen.emplace(d.doc_id, line_no); !ok) {
        throw InputError("duplicate doc_id '" + d.doc_id + "' (first seen on line " +
                         std::to_string(it->second) + ")");
      }
      docs.push_back(std::move(d));
    } catch (const InputError& e) {
      throw InputError(source_name, line_no, e.what());
    } catch (const json::exception& e) {
      throw InputError(source_name, line_no, std::string("malformed record: ") + e.what());
    }
  }
  return Corpus::from_documents(std::move(docs));
}

Corpus ingest_documents(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw InputError(source.string(), 0, "cannot open corpus file");
  return ingest_documents(in, source.string());
}

std::string serialize_document(const Document& d) {
  json j;
  j["doc_id"] = d.doc_id;
  j["text_length"] = d.text_length;
  j["tokens"] = d.tokens;
  j["mentions"] = json::array();
  for (const auto& m : d.mentions) {
    j["mentions"].push_back({{"concept_id", m.concept_id}, {"start", m.start}, {"end", m.end}});
  }
  j["statements"] = json::array();
  for (const auto& s : d.extractions) {
    j["statements"].push_back({{"subject", s.subject},
                               {"predicate", s.predicate},
                               {"object", s.object},
                               {"confidence", s.confidence},
                               {"sentence", s.sentence_index}});
  }
  return j.dump();
}

}  // namespace graphrank
