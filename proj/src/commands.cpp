#include "graphrank/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "graphrank/error.hpp"

namespace graphrank {

namespace {

namespace fs = std::filesystem;

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::ofstream open_output(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(p.string(), 0, "cannot write output file");
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError(dir.string(), 0, "cannot create directory: " + ec.message());
}

DisjunctiveQuery build_query(const Engine& engine, const SearchRequest& r) {
  const int kinds = (!r.triples.empty() ? 1 : 0) + (r.keywords ? 1 : 0) + (r.text ? 1 : 0);
  if (kinds != 1) throw InputError("give exactly one of triples, keywords, or text");
  if (!r.triples.empty()) {
    std::vector<TermTriple> triples;
    for (const auto& t : r.triples) triples.push_back(parse_term_triple(t));
    return engine.translate(triples);
  }
  std::istringstream line(r.topic_id + "\t" + (r.keywords ? "keyword\t" + *r.keywords
                                                            : "freetext\t" + *r.text));
  const auto topics = load_topics(line, "query");
  if (topics.size() != 1) throw InputError("empty query");
  return engine.compile(topics.front());
}

// Runs fn(i) for i in [0, n) on `threads` workers; each index is written by
// exactly one worker.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::size_t thread_count_from_env() {
  if (const char* v = std::getenv(kThreadsEnv); v != nullptr && *v != '\0') {
    char* end = nullptr;
    const auto n = std::strtoul(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Scope load_scope(const fs::path& source) {
  std::ifstream in(source);
  if (!in) throw InputError(source.string(), 0, "cannot open scope file");
  Scope scope;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    scope.insert(line.substr(b, line.find_last_not_of(" \t\r") - b + 1));
  }
  return scope;
}

std::vector<SearchMode> mode_matrix(const std::vector<bool>& partial,
                                    const std::vector<bool>& ontology,
                                    const std::vector<RankerMode>& rankers, std::size_t cutoff) {
  std::vector<SearchMode> modes;
  for (bool p : partial) {
    for (bool o : ontology) {
      for (auto r : rankers) {
        if (r != RankerMode::bm25_native) modes.push_back({p, o, r, cutoff});
      }
    }
  }
  if (std::find(rankers.begin(), rankers.end(), RankerMode::bm25_native) != rankers.end()) {
    modes.push_back({false, false, RankerMode::bm25_native, cutoff});
  }
  return modes;
}

SearchOutcome run_search(const Engine& engine, const SearchRequest& request) {
  SearchOutcome outcome;
  outcome.query = build_query(engine, request);
  std::optional<Scope> scope;
  if (request.scope) scope = load_scope(*request.scope);
  outcome.hits = engine.search(outcome.query, request.mode, scope ? &*scope : nullptr);
  if (request.out_dir) {
    ensure_dir(*request.out_dir);
    Run run;
    run.tag = request.mode.slug();
    run.topics[request.topic_id] = to_run_entries(outcome.hits, request.mode.ranker);
    outcome.run_file = *request.out_dir / (request.mode.slug() + ".run");
    auto out = open_output(*outcome.run_file);
    write_run(out, run);
  }
  return outcome;
}

SearchOutcome cmd_search(const SearchRequest& request, std::ostream& listing) {
  const auto engine = load_index(request.index_dir);
  auto outcome = run_search(engine, request);
  const auto& q = outcome.query;

  listing << "mode: " << request.mode.name() << '\n';
  listing << "translation score: " << fixed(q.query_translation_score, 3) << '\n';
  for (std::size_t i = 0; i < q.components.size(); ++i) {
    listing << "  C" << i + 1 << " \"" << q.components[i].label << "\":";
    for (const auto& a : q.components[i].alternatives) {
      listing << ' ' << a.concept_id << '@' << fixed(a.score, 3);
      if (a.origin != ConceptOrigin::original) listing << '(' << to_string(a.origin) << ')';
    }
    listing << '\n';
  }
  listing << "alternatives: " << q.alternatives.size() << ", hits: " << outcome.hits.size()
          << '\n';
  std::size_t rank = 0;
  for (const auto& h : outcome.hits) {
    listing << std::setw(4) << ++rank << "  " << h.doc_id << "  " << fixed(h.score, 6) << "  "
            << to_string(h.match_class) << '\n';
    if (!h.best_fragment) continue;
    const auto d = engine.corpus().find(h.doc_id);
    for (const auto& e : h.best_fragment->edges) {
      listing << "        " << to_string(e);
      if (d) listing << " conf=" << fixed(edge_conf(e, engine.corpus().graph(*d)), 3);
      listing << '\n';
    }
  }
  if (outcome.run_file) listing << "run file: " << outcome.run_file->string() << '\n';
  return outcome;
}

EvaluationResult run_evaluation(const Engine& engine, const EvaluateRequest& request,
                                std::ostream& log) {
  EvaluationResult result;
  const auto topics = load_topics(request.topics);
  const auto qrels = load_qrels(request.qrels);
  std::optional<Scope> scope;
  if (request.scope) scope = load_scope(*request.scope);
  if (topics.empty()) result.warnings.push_back("topics file is empty");

  std::vector<std::optional<DisjunctiveQuery>> queries(topics.size());
  result.translations.resize(topics.size());
  parallel_for(topics.size(), request.threads, [&](std::size_t i) {
    auto& tr = result.translations[i];
    tr.topic_id = topics[i].topic_id;
    try {
      auto q = engine.compile(topics[i]);
      tr.score = q.query_translation_score;
      tr.alternatives = q.alternatives.size();
      if (q.query_translation_score < request.min_translation) {
        tr.error = "translation score " + fixed(q.query_translation_score, 3) + " below " +
                   fixed(request.min_translation, 3);
      } else {
        queries[i] = std::move(q);
      }
    } catch (const Error& e) {
      tr.error = e.what();
    }
  });
  for (const auto& tr : result.translations) {
    if (tr.error.empty()) continue;
    result.excluded.push_back(tr.topic_id);
    log << "topic " << tr.topic_id << " excluded: " << tr.error << '\n';
  }

  ensure_dir(request.out_dir);
  for (const auto& mode : request.modes) {
    std::vector<std::vector<RunEntry>> ranked(topics.size());
    std::vector<std::string> errors(topics.size());
    parallel_for(topics.size(), request.threads, [&](std::size_t i) {
      if (!queries[i]) return;
      try {
        ranked[i] = to_run_entries(engine.search(*queries[i], mode, scope ? &*scope : nullptr),
                                   mode.ranker);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    });

    Run run;
    run.tag = mode.slug();
    for (std::size_t i = 0; i < topics.size(); ++i) {
      if (!errors[i].empty()) {
        log << mode.slug() << ": topic " << topics[i].topic_id << " failed: " << errors[i] << '\n';
        result.warnings.push_back(mode.slug() + "/" + topics[i].topic_id + ": " + errors[i]);
        continue;
      }
      if (queries[i]) run.topics[topics[i].topic_id] = std::move(ranked[i]);
    }
    const auto path = request.out_dir / (mode.slug() + ".run");
    {
      auto out = open_output(path);
      write_run(out, run);
    }
    result.run_files.push_back(path);
    auto report = evaluate(run, qrels, result.excluded);
    for (const auto& w : report.warnings) log << mode.slug() << ": " << w << '\n';
    result.rows.emplace_back(mode, std::move(report));
  }

  {
    auto out = open_output(request.out_dir / "metrics.tsv");
    out << render_metric_table(result);
  }
  {
    auto out = open_output(request.out_dir / "translation.tsv");
    out << "topic\ttranslation_score\talternatives\tstatus\n";
    for (const auto& tr : result.translations) {
      out << tr.topic_id << '\t' << fixed(tr.score, 4) << '\t' << tr.alternatives << '\t'
          << (tr.error.empty() ? "ok" : "excluded: " + tr.error) << '\n';
    }
  }
  {
    auto out = open_output(request.out_dir / "per_topic.tsv");
    out << "mode\ttopic\trecall@1000\tndcg@10\tndcg@20\tndcg@100\tp@10\tp@20\tp@100\tretrieved\t"
           "unjudged_removed\trelevant\n";
    for (const auto& [mode, report] : result.rows) {
      for (const auto& m : report.per_topic) {
        out << mode.slug() << '\t' << m.topic << '\t' << fixed(m.recall_1000) << '\t'
            << fixed(m.ndcg_10) << '\t' << fixed(m.ndcg_20) << '\t' << fixed(m.ndcg_100) << '\t'
            << fixed(m.p_10) << '\t' << fixed(m.p_20) << '\t' << fixed(m.p_100) << '\t'
            << m.retrieved << '\t' << m.unjudged_removed << '\t' << m.relevant << '\n';
      }
    }
  }
  return result;
}

EvaluationResult cmd_evaluate(const EvaluateRequest& request, std::ostream& log) {
  const auto engine = load_index(request.index_dir);
  return run_evaluation(engine, request, log);
}

std::string render_metric_table(const EvaluationResult& result) {
  std::ostringstream os;
  os << "mode\ttopics\tRecall@1000\tnDCG@10\tnDCG@20\tnDCG@100\tP@10\tP@20\tP@100\n";
  for (const auto& [mode, report] : result.rows) {
    os << mode.name() << '\t' << report.per_topic.size();
    if (report.mean) {
      const auto& m = *report.mean;
      for (double v : {m.recall_1000, m.ndcg_10, m.ndcg_20, m.ndcg_100, m.p_10, m.p_20, m.p_100}) {
        os << '\t' << fixed(v);
      }
    } else {
      for (int i = 0; i < 7; ++i) os << "\t-";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace graphrank
