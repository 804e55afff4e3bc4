#include "graphrank/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "graphrank/error.hpp"

namespace graphrank {

namespace {

constexpr const char* kSyllables[] = {"ba", "ko", "ri", "mu", "te", "lo", "sa", "ne", "vi", "do",
                                      "ga", "pe", "zu", "fi", "ha", "jo", "ku", "ly", "mo", "tra"};
constexpr std::size_t kSyllableCount = std::size(kSyllables);

constexpr const char* kFiller[] = {"patients", "study",   "results", "clinical", "effect",
                                   "analysis", "cells",   "trial",   "response", "expression",
                                   "cohort",   "outcome", "levels",  "role",     "therapy",
                                   "observed", "data",    "risk",    "model",    "increased"};

constexpr const char* kPredicates[] = {"treats", "inhibits", "interacts", "associated", "induces"};

std::string word(std::size_t i) {
  std::string w;
  for (int k = 0; k < 3; ++k) {
    w += kSyllables[i % kSyllableCount];
    i /= kSyllableCount;
  }
  return w;
}

struct Generator {
  explicit Generator(const SyntheticSpec& s) : spec(s), rng(s.seed) {}

  const SyntheticSpec& spec;
  std::mt19937_64 rng;
  SyntheticBenchmark bench;
  std::vector<std::size_t> diseases, drugs, genes;
  std::map<std::size_t, std::size_t> parent_of;

  std::size_t uniform(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }
  double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

  static ConceptId id(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "C%04zu", i);
    return buf;
  }

  void make_vocabulary() {
    const auto n = std::max<std::size_t>(spec.concepts, 6);
    for (std::size_t i = 0; i < n; ++i) {
      ConceptEntry e;
      e.concept_id = id(i);
      const auto w = word((i * 2654435761u + 3) % (kSyllableCount * kSyllableCount * kSyllableCount));
      switch (i % 3) {
        case 0: {
          e.concept_type = ConceptType::disease;
          // Later diseases may specialize an earlier one; the child's label
          // extends the parent's so term containment finds both.
          if (diseases.size() >= 3 && real() < 0.7) {
            const auto parent = diseases[uniform(0, diseases.size() - 1)];
            parent_of[i] = parent;
            auto base = bench.vocabulary[parent].preferred_label;
            base.erase(base.size() - std::string(" disease").size());
            e.synonyms = {base + " " + w + " disease", w + " disorder"};
            bench.ontology.emplace_back(e.concept_id, id(parent));
          } else {
            e.synonyms = {w + " disease"};
          }
          diseases.push_back(i);
          break;
        }
        case 1:
          e.concept_type = ConceptType::drug;
          e.synonyms = {w + "nib", w + "nib hydrochloride"};
          drugs.push_back(i);
          break;
        default:
          e.concept_type = ConceptType::gene;
          e.synonyms = {w + std::to_string(i % 9 + 1)};
          genes.push_back(i);
          break;
      }
      e.preferred_label = e.synonyms.front();
      bench.vocabulary.push_back(std::move(e));
    }
  }

  struct TopicPlan {
    std::vector<std::size_t> concepts;  // component concepts in order
  };
  std::vector<TopicPlan> plans;

  void make_topics() {
    for (std::size_t t = 0; t < spec.topics; ++t) {
      TopicPlan plan;
      // Prefer specialized diseases so upward expansion has somewhere to go.
      std::vector<std::size_t> pool;
      for (auto d : diseases) {
        if (parent_of.contains(d)) pool.push_back(d);
      }
      if (pool.empty()) pool = diseases;
      plan.concepts.push_back(pool[uniform(0, pool.size() - 1)]);
      plan.concepts.push_back(genes[uniform(0, genes.size() - 1)]);
      if (t % 3 != 2) plan.concepts.push_back(drugs[uniform(0, drugs.size() - 1)]);

      Topic topic;
      char buf[16];
      std::snprintf(buf, sizeof buf, "T%03zu", t + 1);
      topic.topic_id = buf;
      if (t % 5 == 4) {
        topic.kind = Topic::Kind::freetext;
        topic.text = "effect of " + bench.vocabulary[plan.concepts.back()].preferred_label +
                     " in " + bench.vocabulary[plan.concepts.front()].preferred_label;
        plan.concepts = {plan.concepts.front(), plan.concepts.back()};
      } else {
        topic.kind = Topic::Kind::keyword;
        for (auto c : plan.concepts) {
          const auto& e = bench.vocabulary[c];
          topic.components.push_back({e.preferred_label, e.concept_type});
          topic.text += (topic.text.empty() ? "" : " ") + e.preferred_label;
        }
      }
      bench.topics.push_back(std::move(topic));
      plans.push_back(std::move(plan));
    }
  }

  std::size_t popular_concept() {
    const double u = real();
    return std::min(bench.vocabulary.size() - 1,
                    static_cast<std::size_t>(u * u * static_cast<double>(bench.vocabulary.size())));
  }

  void make_documents() {
    std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> judged;  // topic -> (doc, grade)
    for (std::size_t d = 0; d < spec.docs; ++d) {
      std::set<std::size_t> concepts;
      std::vector<std::pair<std::size_t, std::size_t>> planted_edges;
      std::optional<std::size_t> topic;
      int grade = 0;
      if (!plans.empty() && real() < spec.relevant_fraction) {
        topic = uniform(0, plans.size() - 1);
        auto nodes = plans[*topic].concepts;
        grade = 2;
        const double roll = real();
        if (roll < 0.25 && parent_of.contains(nodes.front())) {
          nodes.front() = parent_of.at(nodes.front());  // more general disease
          grade = 1;
        } else if (roll < 0.45) {
          nodes.pop_back();  // only part of the topic is discussed
          grade = 1;
        }
        concepts.insert(nodes.begin(), nodes.end());
        for (std::size_t i = 1; i < nodes.size(); ++i) {
          planted_edges.emplace_back(nodes[i - 1], nodes[i]);
        }
      }
      const auto background = uniform(2, 5);
      const auto target = std::min(bench.vocabulary.size(),
                                   background + planted_edges.size() + (topic ? 1 : 0));
      while (concepts.size() < target) {
        concepts.insert(popular_concept());
      }

      Document doc;
      char buf[16];
      std::snprintf(buf, sizeof buf, "D%06zu", d);
      doc.doc_id = buf;
      doc.text_length = uniform(300, 1500);
      for (auto c : concepts) {
        const auto count = uniform(1, 4);
        for (std::size_t k = 0; k < count; ++k) {
          const auto start = uniform(0, doc.text_length - 12);
          doc.mentions.push_back({id(c), start, start + 10});
        }
      }
      std::sort(doc.mentions.begin(), doc.mentions.end(),
                [](const auto& a, const auto& b) { return a.start < b.start; });

      std::vector<std::size_t> members(concepts.begin(), concepts.end());
      auto add_statement = [&](std::size_t s, std::size_t o, const char* predicate) {
        doc.extractions.push_back({id(s), predicate, id(o), std::round(real() * 1000.0) / 1000.0,
                                   uniform(0, 9)});
      };
      for (const auto& [s, o] : planted_edges) {
        add_statement(s, o, kPredicates[uniform(0, std::size(kPredicates) - 1)]);
      }
      const auto extra = uniform(0, members.size());
      for (std::size_t k = 0; k < extra; ++k) {
        const auto s = members[uniform(0, members.size() - 1)];
        const auto o = members[uniform(0, members.size() - 1)];
        if (s != o) add_statement(s, o, kPredicates[uniform(0, std::size(kPredicates) - 1)]);
      }

      for (const auto& m : doc.mentions) {
        const auto& label = bench.vocabulary[std::stoul(m.concept_id.substr(1))].preferred_label;
        for (auto& t : tokenize(label)) doc.tokens.push_back(std::move(t));
        for (std::size_t k = uniform(3, 12); k > 0; --k) {
          doc.tokens.emplace_back(kFiller[uniform(0, std::size(kFiller) - 1)]);
        }
      }

      if (topic) judged[*topic].emplace_back(d, grade);
      for (std::size_t t = 0; t < plans.size(); ++t) {
        if (topic && *topic == t) continue;
        const bool mentions_topic = std::any_of(
            plans[t].concepts.begin(), plans[t].concepts.end(),
            [&](std::size_t c) { return concepts.contains(c); });
        if (mentions_topic && real() < 0.5) judged[t].emplace_back(d, 0);
      }
      bench.documents.push_back(std::move(doc));
    }
    for (const auto& [t, docs] : judged) {
      for (const auto& [d, g] : docs) {
        bench.qrels.set(bench.topics[t].topic_id, bench.documents[d].doc_id, g);
      }
    }
  }
};

}  // namespace

SyntheticBenchmark make_synthetic_benchmark(const SyntheticSpec& spec) {
  Generator g(spec);
  g.make_vocabulary();
  g.make_topics();
  g.make_documents();
  return std::move(g.bench);
}

void write_benchmark(const SyntheticBenchmark& bench, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError(dir.string(), 0, "cannot create directory: " + ec.message());
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError((dir / name).string(), 0, "cannot write file");
    return out;
  };
  {
    auto out = open("corpus.jsonl");
    for (const auto& d : bench.documents) out << serialize_document(d) << '\n';
  }
  {
    auto out = open("vocabulary.tsv");
    for (const auto& e : bench.vocabulary) {
      out << e.concept_id << '\t' << to_string(e.concept_type) << '\t';
      for (std::size_t i = 0; i < e.synonyms.size(); ++i) out << (i ? "|" : "") << e.synonyms[i];
      out << '\n';
    }
  }
  {
    auto out = open("ontology.tsv");
    for (const auto& [child, parent] : bench.ontology) out << child << '\t' << parent << '\n';
  }
  {
    auto out = open("topics.tsv");
    for (const auto& t : bench.topics) {
      out << t.topic_id << '\t';
      if (t.kind == Topic::Kind::freetext) {
        out << "freetext\t" << t.text << '\n';
        continue;
      }
      out << "keyword\t";
      for (std::size_t i = 0; i < t.components.size(); ++i) {
        const auto& c = t.components[i];
        out << (i ? " | " : "") << c.term;
        if (c.type) out << ':' << to_string(*c.type);
      }
      out << '\n';
    }
  }
  {
    auto out = open("qrels.txt");
    for (const auto& [topic, docs] : bench.qrels.topics()) {
      for (const auto& [doc, grade] : docs) out << topic << " 0 " << doc << ' ' << grade << '\n';
    }
  }
}

}  // namespace graphrank
