#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphrank/commands.hpp"
#include "graphrank/error.hpp"
#include "graphrank/synthetic.hpp"

using namespace graphrank;

namespace {

RankerMode ranker_from(const std::string& s) {
  auto r = parse_ranker_mode(s);
  if (!r) throw InputError("unknown ranker '" + s + "'");
  return *r;
}

bool partial_from(const std::string& s) {
  if (s == "full") return false;
  if (s == "partial") return true;
  throw InputError("unknown match mode '" + s + "' (full|partial)");
}

bool switch_from(const std::string& s) {
  if (s == "off") return false;
  if (s == "on") return true;
  throw InputError("expected on|off, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based biomedical document retrieval"};
  app.require_subcommand(1);

  // index
  IndexInputs inputs;
  std::string index_out;
  auto* index = app.add_subcommand("index", "Validate inputs and build an index directory");
  index->add_option("--corpus", inputs.corpus, "Document corpus (JSONL)")->required();
  index->add_option("--vocab", inputs.vocabulary, "Vocabulary TSV")->required();
  index->add_option("--ontology", inputs.ontology, "Ontology TSV (child<TAB>parent)");
  index->add_option("--config", inputs.config, "Engine config");
  index->add_option("--out", index_out, "Index directory")->required();

  // search
  SearchRequest search;
  std::string search_index, search_match = "full", search_ranker = "graphrank";
  std::string keywords, text;
  auto* sc = app.add_subcommand("search", "Run one query against an index");
  sc->add_option("--index", search_index, "Index directory")->required();
  sc->add_option("--triple", search.triples, "Term triple 'subject;predicate;object' (repeatable)");
  sc->add_option("--keywords", keywords, "Keyword query 'a | b:type | c'");
  sc->add_option("--text", text, "Free-text query");
  sc->add_option("--match", search_match, "full|partial");
  sc->add_flag("--expand-ontology", search.mode.expand_ontology, "Expand query upwards");
  sc->add_option("--ranker", search_ranker, "graphrank|bm25-rerank|bm25-native|none");
  sc->add_option("--cutoff", search.mode.cutoff, "Maximum hits");
  sc->add_option("--scope", search.scope, "Restrict to doc ids listed in file");
  sc->add_option("--out", search.out_dir, "Write a run file into this directory");
  sc->add_option("--topic-id", search.topic_id, "Topic id for the run file");

  // evaluate
  EvaluateRequest eval;
  std::string eval_index;
  std::vector<std::string> eval_match{"full", "partial"};
  std::vector<std::string> eval_rankers{"graphrank", "bm25-rerank", "bm25-native", "none"};
  std::vector<std::string> eval_ontology{"off"};
  bool eval_expand = false;
  std::size_t eval_cutoff = kDefaultCutoff;
  auto* ev = app.add_subcommand("evaluate", "Run topics under a mode matrix and score them");
  ev->add_option("--index", eval_index, "Index directory")->required();
  ev->add_option("--topics", eval.topics, "Topics TSV")->required();
  ev->add_option("--qrels", eval.qrels, "Relevance judgments")->required();
  ev->add_option("--out", eval.out_dir, "Output directory")->required();
  ev->add_option("--match", eval_match, "Match modes (full,partial)")->delimiter(',');
  ev->add_option("--ranker", eval_rankers, "Rankers")->delimiter(',');
  ev->add_option("--ontology", eval_ontology, "Ontology expansion (off,on)")->delimiter(',');
  ev->add_flag("--expand-ontology", eval_expand, "Same as --ontology on");
  ev->add_option("--cutoff", eval_cutoff, "Run length per topic");
  ev->add_option("--scope", eval.scope, "Restrict to doc ids listed in file");
  ev->add_option("--min-translation", eval.min_translation,
                 "Exclude topics with a lower translation score");

  // synth
  SyntheticSpec spec;
  std::string synth_out;
  auto* sy = app.add_subcommand("synth", "Generate a synthetic benchmark");
  sy->add_option("--docs", spec.docs);
  sy->add_option("--concepts", spec.concepts);
  sy->add_option("--topics", spec.topics);
  sy->add_option("--relevant-fraction", spec.relevant_fraction);
  sy->add_option("--seed", spec.seed);
  sy->add_option("--out", synth_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*index) {
      const auto m = write_index(inputs, index_out);
      std::cout << "indexed " << m.doc_count << " documents, " << m.concept_count
                << " concepts, " << m.edge_count << " distinct statements into " << index_out
                << '\n';
    } else if (*sc) {
      search.index_dir = search_index;
      search.mode.partial = partial_from(search_match);
      search.mode.ranker = ranker_from(search_ranker);
      if (sc->count("--keywords")) search.keywords = keywords;
      if (sc->count("--text")) search.text = text;
      cmd_search(search, std::cout);
    } else if (*ev) {
      eval.index_dir = eval_index;
      std::vector<bool> partial, ontology;
      std::vector<RankerMode> rankers;
      for (const auto& m : eval_match) partial.push_back(partial_from(m));
      if (eval_expand) eval_ontology = {"on"};
      for (const auto& o : eval_ontology) ontology.push_back(switch_from(o));
      for (const auto& r : eval_rankers) rankers.push_back(ranker_from(r));
      eval.modes = mode_matrix(partial, ontology, rankers, eval_cutoff);
      eval.threads = thread_count_from_env();
      const auto result = cmd_evaluate(eval, std::cerr);
      std::cout << render_metric_table(result);
      std::cout << "excluded topics: " << result.excluded.size() << '\n';
    } else if (*sy) {
      write_benchmark(make_synthetic_benchmark(spec), synth_out);
      std::cout << "wrote benchmark to " << synth_out << '\n';
    }
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
