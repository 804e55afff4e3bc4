#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <sstream>

#include "graphrank/commands.hpp"
#include "graphrank/error.hpp"
#include "graphrank/index_store.hpp"
#include "graphrank/synthetic.hpp"

namespace py = pybind11;
using namespace graphrank;

namespace {

RankerMode ranker_of(const std::string& s) {
  auto r = parse_ranker_mode(s);
  if (!r) throw InputError("unknown ranker '" + s + "'");
  return *r;
}

bool partial_of(const std::string& s) {
  if (s == "full") return false;
  if (s == "partial") return true;
  throw InputError("match must be 'full' or 'partial', got '" + s + "'");
}

py::dict metrics_dict(const TopicMetrics& m) {
  py::dict d;
  d["recall@1000"] = m.recall_1000;
  d["ndcg@10"] = m.ndcg_10;
  d["ndcg@20"] = m.ndcg_20;
  d["ndcg@100"] = m.ndcg_100;
  d["p@10"] = m.p_10;
  d["p@20"] = m.p_20;
  d["p@100"] = m.p_100;
  return d;
}

py::dict query_dict(const DisjunctiveQuery& q) {
  py::list comps;
  for (const auto& c : q.components) {
    py::list alts;
    for (const auto& a : c.alternatives) {
      alts.append(py::make_tuple(a.concept_id, a.score, std::string(to_string(a.origin))));
    }
    py::dict d;
    d["label"] = c.label;
    d["concepts"] = alts;
    comps.append(d);
  }
  py::dict d;
  d["components"] = comps;
  d["alternatives"] = q.alternatives.size();
  d["translation_score"] = q.query_translation_score;
  return d;
}

}  // namespace

PYBIND11_MODULE(_graphrank, m) {
  m.doc() = "Graph-based document retrieval with GraphRank";

  // Translators run newest first, so the specific types are registered last.
  auto base = py::register_exception<Error>(m, "GraphRankError");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<UntranslatableError>(m, "UntranslatableError", base.ptr());

  m.def("jaccard_similarity", &jaccard_similarity, py::arg("a"), py::arg("b"));
  m.def("tokenize", &tokenize, py::arg("text"));

  m.def(
      "build_index",
      [](const std::filesystem::path& corpus, const std::filesystem::path& vocab,
         const std::filesystem::path& out, std::optional<std::filesystem::path> ontology,
         std::optional<std::filesystem::path> config) {
        const auto man = write_index({corpus, vocab, ontology, config}, out);
        py::dict d;
        d["documents"] = man.doc_count;
        d["concepts"] = man.concept_count;
        d["statements"] = man.edge_count;
        d["files"] = man.files;
        return d;
      },
      py::arg("corpus"), py::arg("vocab"), py::arg("out"), py::arg("ontology") = py::none(),
      py::arg("config") = py::none());

  m.def(
      "synthesize",
      [](const std::filesystem::path& out, std::size_t docs, std::size_t concepts,
         std::size_t topics, std::uint64_t seed) {
        SyntheticSpec spec;
        spec.docs = docs;
        spec.concepts = concepts;
        spec.topics = topics;
        spec.seed = seed;
        write_benchmark(make_synthetic_benchmark(spec), out);
      },
      py::arg("out"), py::arg("docs") = 1000, py::arg("concepts") = 120, py::arg("topics") = 10,
      py::arg("seed") = 7);

  py::class_<Engine, std::shared_ptr<Engine>>(m, "Index")
      .def(py::init([](const std::filesystem::path& dir) {
             return std::make_shared<Engine>(load_index(dir));
           }),
           py::arg("path"))
      .def_property_readonly("document_count", [](const Engine& e) { return e.corpus().size(); })
      .def(
          "translate",
          [](const Engine& e, const std::vector<std::string>& triples) {
            std::vector<TermTriple> parsed;
            for (const auto& t : triples) parsed.push_back(parse_term_triple(t));
            return query_dict(e.translate(parsed));
          },
          py::arg("triples"))
      .def(
          "search",
          [](const Engine& e, std::vector<std::string> triples, std::optional<std::string> keywords,
             std::optional<std::string> text, const std::string& match, bool expand_ontology,
             const std::string& ranker, std::size_t cutoff) {
            SearchRequest req;
            req.triples = std::move(triples);
            req.keywords = std::move(keywords);
            req.text = std::move(text);
            req.mode = {partial_of(match), expand_ontology, ranker_of(ranker), cutoff};
            SearchOutcome out;
            {
              py::gil_scoped_release release;
              out = run_search(e, req);
            }
            py::list hits;
            for (const auto& h : out.hits) {
              py::dict d;
              d["doc_id"] = h.doc_id;
              d["score"] = h.score;
              d["match"] = std::string(to_string(h.match_class));
              py::list edges;
              if (h.best_fragment) {
                for (const auto& x : h.best_fragment->edges) {
                  edges.append(py::make_tuple(x.subject, x.predicate, x.object));
                }
              }
              d["edges"] = edges;
              hits.append(d);
            }
            return hits;
          },
          py::arg("triples") = std::vector<std::string>{}, py::arg("keywords") = py::none(),
          py::arg("text") = py::none(), py::arg("match") = "full",
          py::arg("expand_ontology") = false, py::arg("ranker") = "graphrank",
          py::arg("cutoff") = kDefaultCutoff);

  m.def(
      "evaluate",
      [](const std::filesystem::path& index, const std::filesystem::path& topics,
         const std::filesystem::path& qrels, const std::filesystem::path& out,
         const std::vector<std::string>& match, const std::vector<std::string>& rankers,
         const std::vector<bool>& ontology, std::optional<std::size_t> threads) {
        std::vector<bool> partial;
        for (const auto& s : match) partial.push_back(partial_of(s));
        std::vector<RankerMode> modes;
        for (const auto& s : rankers) modes.push_back(ranker_of(s));
        EvaluateRequest req;
        req.index_dir = index;
        req.topics = topics;
        req.qrels = qrels;
        req.out_dir = out;
        req.modes = mode_matrix(partial, ontology, modes);
        req.threads = threads.value_or(thread_count_from_env());
        std::ostringstream log;
        EvaluationResult res;
        {
          py::gil_scoped_release release;
          res = cmd_evaluate(req, log);
        }
        py::dict rows;
        for (const auto& [mode, report] : res.rows) {
          rows[py::str(mode.name())] = report.mean ? py::object(metrics_dict(*report.mean))
                                                   : py::object(py::none());
        }
        py::dict d;
        d["metrics"] = rows;
        d["excluded"] = res.excluded;
        d["warnings"] = res.warnings;
        d["table"] = render_metric_table(res);
        return d;
      },
      py::arg("index"), py::arg("topics"), py::arg("qrels"), py::arg("out"),
      py::arg("match") = std::vector<std::string>{"full", "partial"},
      py::arg("rankers") = std::vector<std::string>{"graphrank", "bm25-rerank", "bm25-native", "none"},
      py::arg("ontology") = std::vector<bool>{false}, py::arg("threads") = py::none());
}
