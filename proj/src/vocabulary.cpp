#include "graphrank/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "graphrank/error.hpp"

namespace graphrank {

namespace {

bool is_separator(unsigned char ch) {
  return ch < 0x80 && (std::isspace(ch) || std::ispunct(ch));
}

char lower(char ch) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
}

std::uint32_t trigram_key(std::string_view s, std::size_t i) {
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(s[i])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[i + 1])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[i + 2]));
}

// Lowercase with runs of whitespace collapsed to one space, trimmed.
std::string normalize_label(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(lower(ch));
  }
  return out;
}

std::set<std::string> token_set(std::string_view s) {
  auto tokens = tokenize(s);
  return {tokens.begin(), tokens.end()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

std::string_view to_string(ConceptType t) {
  switch (t) {
    case ConceptType::disease: return "disease";
    case ConceptType::drug: return "drug";
    case ConceptType::gene: return "gene";
    case ConceptType::species: return "species";
    case ConceptType::other: return "other";
  }
  return "other";
}

std::optional<ConceptType> parse_concept_type(std::string_view s) {
  std::string l(s);
  std::transform(l.begin(), l.end(), l.begin(), lower);
  for (auto t : {ConceptType::disease, ConceptType::drug, ConceptType::gene,
                 ConceptType::species, ConceptType::other}) {
    if (l == to_string(t)) return t;
  }
  return std::nullopt;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (is_separator(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(lower(ch));
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

double jaccard_similarity(std::string_view a, std::string_view b) {
  const auto ta = token_set(a);
  const auto tb = token_set(b);
  if (ta.empty() && tb.empty()) return 0.0;
  std::size_t shared = 0;
  for (const auto& t : ta) shared += tb.count(t);
  return static_cast<double>(shared) / static_cast<double>(ta.size() + tb.size() - shared);
}

Vocabulary Vocabulary::from_entries(std::vector<ConceptEntry> entries) {
  Vocabulary v;
  v.entries_ = std::move(entries);
  for (std::uint32_t i = 0; i < v.entries_.size(); ++i) {
    auto& e = v.entries_[i];
    if (e.concept_id.empty()) throw InputError("concept entry with empty concept_id");
    if (!v.by_id_.emplace(e.concept_id, i).second) {
      throw InputError("duplicate concept_id '" + e.concept_id + "'");
    }
    std::vector<std::string> normalized;
    for (const auto& s : e.synonyms) {
      auto n = normalize_label(s);
      if (!n.empty() && std::find(normalized.begin(), normalized.end(), n) == normalized.end()) {
        normalized.push_back(std::move(n));
      }
    }
    if (normalized.empty()) {
      throw InputError("concept '" + e.concept_id + "' has no synonyms");
    }
    e.synonyms = std::move(normalized);
    e.preferred_label = e.preferred_label.empty() ? e.synonyms.front()
                                                  : normalize_label(e.preferred_label);
    if (std::find(e.synonyms.begin(), e.synonyms.end(), e.preferred_label) == e.synonyms.end()) {
      e.synonyms.insert(e.synonyms.begin(), e.preferred_label);
    }
    for (const auto& s : e.synonyms) v.synonyms_.push_back({s, i});
  }

  for (std::uint32_t sid = 0; sid < v.synonyms_.size(); ++sid) {
    const auto& text = v.synonyms_[sid].text;
    for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
      auto& postings = v.trigrams_[trigram_key(text, i)];
      if (postings.empty() || postings.back() != sid) postings.push_back(sid);
    }
  }
  return v;
}

const ConceptEntry* Vocabulary::find(const ConceptId& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

std::vector<std::uint32_t> Vocabulary::candidates_for(
    const std::vector<std::string>& tokens) const {
  std::optional<std::vector<std::uint32_t>> acc;
  for (const auto& t : tokens) {
    for (std::size_t i = 0; i + 3 <= t.size(); ++i) {
      auto it = trigrams_.find(trigram_key(t, i));
      if (it == trigrams_.end()) return {};
      if (!acc) {
        acc = it->second;
        continue;
      }
      std::vector<std::uint32_t> next;
      std::set_intersection(acc->begin(), acc->end(), it->second.begin(), it->second.end(),
                            std::back_inserter(next));
      acc = std::move(next);
      if (acc->empty()) return {};
    }
  }
  if (acc) return std::move(*acc);
  // Only tokens shorter than a trigram: fall back to scanning every synonym.
  std::vector<std::uint32_t> all(synonyms_.size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

std::vector<ConceptTranslation> Vocabulary::find_concepts(
    std::string_view term, std::optional<ConceptType> type_filter) const {
  const auto tokens = tokenize(term);
  if (tokens.empty()) return {};

  std::map<std::uint32_t, ConceptTranslation> best;
  for (auto sid : candidates_for(tokens)) {
    const auto& syn = synonyms_[sid];
    const auto& entry = entries_[syn.entry];
    if (type_filter && entry.concept_type != *type_filter) continue;
    const bool contains_all = std::all_of(tokens.begin(), tokens.end(), [&](const auto& t) {
      return syn.text.find(t) != std::string::npos;
    });
    if (!contains_all) continue;
    const double score = jaccard_similarity(term, syn.text);
    auto [it, inserted] = best.try_emplace(syn.entry);
    auto& tr = it->second;
    if (inserted || score > tr.translation_score ||
        (score == tr.translation_score && syn.text < tr.matched_synonym)) {
      tr = {entry.concept_id, score, syn.text};
    }
  }

  std::vector<ConceptTranslation> out;
  out.reserve(best.size());
  for (auto& [_, tr] : best) {
    // A containment match always shares at least one token, except when the
    // synonym only contains the term inside a longer token; Jaccard is then 0.
    if (tr.translation_score > 0.0) out.push_back(std::move(tr));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.translation_score != b.translation_score) {
      return a.translation_score > b.translation_score;
    }
    return a.concept_id < b.concept_id;
  });
  return out;
}

Vocabulary load_vocabulary(std::istream& in, const std::string& source_name) {
  std::vector<ConceptEntry> entries;
  std::map<ConceptId, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw InputError(source_name, line_no, "expected 3 tab-separated fields");
    }
    ConceptEntry e;
    e.concept_id = fields[0];
    if (e.concept_id.empty()) throw InputError(source_name, line_no, "empty concept_id");
    const auto type = parse_concept_type(fields[1]);
    if (!type) throw InputError(source_name, line_no, "unknown concept type '" + fields[1] + "'");
    e.concept_type = *type;
    for (auto& s : split(fields[2], '|')) {
      if (!normalize_label(s).empty()) e.synonyms.push_back(s);
    }
    if (e.synonyms.empty()) {
      throw InputError(source_name, line_no, "concept '" + e.concept_id + "' has no synonyms");
    }
    if (auto [it, ok] = seen.emplace(e.concept_id, line_no); !ok) {
      throw InputError(source_name, line_no,
                       "duplicate concept_id '" + e.concept_id + "' (first on line " +
                           std::to_string(it->second) + ")");
    }
    e.preferred_label = e.synonyms.front();
    entries.push_back(std::move(e));
  }
  return Vocabulary::from_entries(std::move(entries));
}

Vocabulary load_vocabulary(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw InputError(source.string(), 0, "cannot open vocabulary file");
  return load_vocabulary(in, source.string());
}

std::vector<DetectedSpan> greedy_concept_detection(std::string_view text,
                                                   const Vocabulary& vocabulary) {
  const auto tokens = tokenize(text);
  std::vector<DetectedSpan> spans;
  std::size_t first = 0;
  while (first < tokens.size()) {
    bool mapped = false;
    for (std::size_t last = tokens.size(); last > first; --last) {
      std::string window = tokens[first];
      for (std::size_t i = first + 1; i < last; ++i) window += " " + tokens[i];
      auto hits = vocabulary.find_concepts(window);
      if (!hits.empty()) {
        spans.push_back({first, last, window, std::move(hits.front())});
        first = last;
        mapped = true;
        break;
      }
    }
    if (!mapped) ++first;
  }
  return spans;
}

}  // namespace graphrank
