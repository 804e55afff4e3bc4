#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graphrank/types.hpp"

namespace graphrank {

enum class ConceptType { disease, drug, gene, species, other };

std::string_view to_string(ConceptType t);
std::optional<ConceptType> parse_concept_type(std::string_view s);

struct ConceptEntry {
  ConceptId concept_id;
  ConceptType concept_type = ConceptType::other;
  std::string preferred_label;
  std::vector<std::string> synonyms;  // lowercased, preferred_label first
};

struct ConceptTranslation {
  ConceptId concept_id;
  double translation_score = 0.0;
  std::string matched_synonym;
};

// Lowercase, split on whitespace and ASCII punctuation. Bytes >= 0x80 are
// kept inside tokens so UTF-8 labels survive intact.
std::vector<std::string> tokenize(std::string_view text);

// Jaccard similarity of the two token sets; 0 when both are empty.
double jaccard_similarity(std::string_view a, std::string_view b);

struct DetectedSpan {
  std::size_t first_token = 0;
  std::size_t last_token = 0;  // exclusive
  std::string text;
  ConceptTranslation best;
};

// Term -> concept lookup with per-token substring containment, accelerated by
// a character-trigram index over all synonyms. Immutable after load.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Throws InputError on duplicate ids or entries without synonyms.
  static Vocabulary from_entries(std::vector<ConceptEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<ConceptEntry>& entries() const { return entries_; }
  const ConceptEntry* find(const ConceptId& id) const;

  // Every concept with a synonym containing all of the term's tokens as
  // substrings, scored by the best Jaccard over its matching synonyms.
  // Ordered by (score desc, concept_id asc).
  std::vector<ConceptTranslation> find_concepts(
      std::string_view term, std::optional<ConceptType> type_filter = std::nullopt) const;

 private:
  struct Synonym {
    std::string text;
    std::uint32_t entry = 0;
  };
  std::vector<std::uint32_t> candidates_for(const std::vector<std::string>& tokens) const;

  std::vector<ConceptEntry> entries_;
  std::unordered_map<ConceptId, std::uint32_t> by_id_;
  std::vector<Synonym> synonyms_;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> trigrams_;  // sorted postings
};

Vocabulary load_vocabulary(const std::filesystem::path& source);
Vocabulary load_vocabulary(std::istream& in, const std::string& source_name);

// Left-to-right greedy longest-window detection over the text's tokens.
std::vector<DetectedSpan> greedy_concept_detection(std::string_view text,
                                                   const Vocabulary& vocabulary);

}  // namespace graphrank
