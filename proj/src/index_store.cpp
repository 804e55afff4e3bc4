#include "graphrank/index_store.hpp"

#include <boost/crc.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphrank/error.hpp"
#include "json.hpp"

namespace graphrank {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kManifest = "manifest.json";
constexpr const char* kDocuments = "documents.jsonl";
constexpr const char* kVocabulary = "vocabulary.tsv";
constexpr const char* kOntology = "ontology.tsv";
constexpr const char* kConfig = "config.cfg";
constexpr const char* kStats = "stats.json";
constexpr const char* kStatements = "statements.tsv";
constexpr const char* kText = "text_index.tsv";

std::string crc32_hex(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError(p.string(), 0, "cannot read index file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(p.string(), 0, "cannot write index file");
  out << bytes;
}

std::string render_vocabulary(const Vocabulary& v) {
  std::ostringstream os;
  for (const auto& e : v.entries()) {
    os << e.concept_id << '\t' << to_string(e.concept_type) << '\t';
    for (std::size_t i = 0; i < e.synonyms.size(); ++i) os << (i ? "|" : "") << e.synonyms[i];
    os << '\n';
  }
  return os.str();
}

std::string render_ontology(const Ontology& o) {
  std::ostringstream os;
  for (const auto& [child, parent] : o.edges()) os << child << '\t' << parent << '\n';
  return os.str();
}

std::string render_stats(const Corpus& c) {
  json j;
  j["doc_count"] = c.stats().doc_count;
  j["concept_df"] = c.stats().concept_df;
  return j.dump(1) + "\n";
}

std::string render_statements(const StatementIndex& index, const Corpus& corpus) {
  std::ostringstream os;
  for (const auto& [e, docs] : index.triples) {
    os << e.subject << '\t' << e.predicate << '\t' << e.object << '\t';
    for (std::size_t i = 0; i < docs.size(); ++i) {
      os << (i ? "," : "") << corpus.document(docs[i]).doc_id;
    }
    os << '\n';
  }
  return os.str();
}

std::string render_text(const TextIndex& index) {
  std::ostringstream os;
  for (const auto& [token, postings] : index.postings) {
    os << token << '\t';
    for (std::size_t i = 0; i < postings.size(); ++i) {
      os << (i ? "," : "") << index.doc_ids[postings[i].doc] << ':' << postings[i].tf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

IndexManifest write_index(const IndexInputs& inputs, const fs::path& dir) {
  auto corpus = ingest_documents(inputs.corpus);
  auto vocabulary = load_vocabulary(inputs.vocabulary);
  auto ontology = inputs.ontology ? load_ontology(*inputs.ontology) : Ontology{};
  auto config = inputs.config ? load_config(*inputs.config) : EngineConfig{};
  const Engine engine(std::move(corpus), std::move(vocabulary), std::move(ontology),
                      std::move(config));

  std::ostringstream docs;
  for (const auto& d : engine.corpus().documents()) docs << serialize_document(d) << '\n';

  const std::map<std::string, std::string> files = {
      {kDocuments, docs.str()},
      {kVocabulary, render_vocabulary(engine.vocabulary())},
      {kOntology, render_ontology(engine.ontology())},
      {kConfig, serialize_config(engine.config())},
      {kStats, render_stats(engine.corpus())},
      {kStatements, render_statements(engine.statements(), engine.corpus())},
      {kText, render_text(engine.text())},
  };

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError(dir.string(), 0, "cannot create index directory: " + ec.message());

  IndexManifest manifest;
  manifest.doc_count = engine.corpus().size();
  manifest.concept_count = engine.vocabulary().size();
  manifest.edge_count = engine.statements().triples.size();
  json j;
  j["format_version"] = manifest.format_version;
  j["doc_count"] = manifest.doc_count;
  j["concept_count"] = manifest.concept_count;
  j["edge_count"] = manifest.edge_count;
  for (const auto& [name, bytes] : files) {
    spill(dir / name, bytes);
    manifest.files[name] = crc32_hex(bytes);
  }
  j["files"] = manifest.files;
  spill(dir / kManifest, j.dump(2) + "\n");
  return manifest;
}

IndexManifest read_manifest(const fs::path& dir) {
  const auto path = dir / kManifest;
  IndexManifest m;
  try {
    const auto j = json::parse(slurp(path));
    m.format_version = j.at("format_version").get<int>();
    m.doc_count = j.at("doc_count").get<std::size_t>();
    m.concept_count = j.value("concept_count", std::size_t{0});
    m.edge_count = j.value("edge_count", std::size_t{0});
    m.files = j.at("files").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    throw InputError(path.string(), 0, std::string("malformed manifest: ") + e.what());
  }
  if (m.format_version != kIndexFormatVersion) {
    throw InputError(path.string(), 0,
                     "unsupported index format version " + std::to_string(m.format_version));
  }
  return m;
}

Engine load_index(const fs::path& dir) {
  const auto manifest = read_manifest(dir);
  for (const auto& name : {kDocuments, kVocabulary, kOntology, kConfig}) {
    auto it = manifest.files.find(name);
    if (it == manifest.files.end()) {
      throw InputError((dir / kManifest).string(), 0, std::string("missing entry for ") + name);
    }
  }
  for (const auto& [name, crc] : manifest.files) {
    if (crc32_hex(slurp(dir / name)) != crc) {
      throw InputError((dir / name).string(), 0, "checksum mismatch; rebuild the index");
    }
  }
  Engine engine(ingest_documents(dir / kDocuments), load_vocabulary(dir / kVocabulary),
                load_ontology(dir / kOntology), load_config(dir / kConfig));
  if (engine.corpus().size() != manifest.doc_count) {
    throw InputError((dir / kManifest).string(), 0, "document count does not match manifest");
  }
  return engine;
}

}  // namespace graphrank
