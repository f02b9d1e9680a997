#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lebkit/lexicons.hpp"
#include "lebkit/text.hpp"

namespace lebkit {

struct TextScore {
  std::optional<double> concreteness;
  std::optional<double> specificity;
  double negation_rate = 0.0;
  std::size_t n_tokens = 0;
  // Absent when the denominator is zero.
  std::optional<double> coverage_concreteness;
  std::optional<double> coverage_spec_noun;
  std::optional<double> coverage_spec_adj;

  bool operator==(const TextScore&) const = default;
};

struct ConcretenessResult {
  std::optional<double> score;
  std::size_t found = 0;
  std::size_t eligible = 0;  // matched multiwords + remaining N/V/A tokens
  std::optional<double> coverage() const;
};

struct SpecificityResult {
  std::optional<double> score;
  std::size_t noun_found = 0;
  std::size_t noun_eligible = 0;
  std::size_t adj_found = 0;
  std::size_t adj_eligible = 0;
  std::optional<double> coverage_noun() const;
  std::optional<double> coverage_adj() const;
};

// Multiword spans are matched greedily, longest first, on folded surfaces and
// then on lemmas; their tokens are not scored again as unigrams. Remaining
// nouns, verbs and adjectives are looked up by surface, then lemma.
ConcretenessResult concreteness_score(const TaggedText& text,
                                      const ConcretenessLexicon& lex);

// 1 + 4 (1 + d) / 20 with d already capped at 19.
double noun_specificity_from_depth(std::size_t d);
// 5 - 4 log(1 + R) / log(1 + R_max), clamped to [1, 5].
double adjective_specificity_from_relations(std::size_t r, std::size_t r_max);

std::optional<double> noun_specificity(std::string_view lemma,
                                       const WordNetStore& store);
std::optional<double> adjective_specificity(std::string_view lemma,
                                            const WordNetStore& store);

SpecificityResult specificity_score(const TaggedText& text,
                                    const WordNetStore& store);

double negation_rate(const TaggedText& text);

struct Resources {
  const ConcretenessLexicon* concreteness = nullptr;
  const WordNetStore* wordnet = nullptr;
  NegationCues cues;
};

TextScore score_tagged(const TaggedText& text, const Resources& res);
// tokenize -> pos_tag (with lemmas) -> mark_negations -> metrics.
TextScore score_text(std::string_view raw, const Resources& res);

// Scores texts on up to `threads` workers (0 = hardware concurrency).
// Output order matches input order.
std::vector<TextScore> score_many(const std::vector<std::string>& texts,
                                  const Resources& res, unsigned threads = 0);

struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> sd;  // population SD
  std::size_t n = 0;         // texts with a present value

  bool operator==(const MetricSummary&) const = default;
};

MetricSummary summarize(const std::vector<double>& values);

struct AggregateScore {
  std::string key;
  std::size_t n_texts = 0;
  MetricSummary concreteness;
  MetricSummary specificity;
  MetricSummary negation_rate;

  bool operator==(const AggregateScore&) const = default;
};

// Absent metric values are skipped. Throws Error on an empty collection.
AggregateScore aggregate(const std::vector<TextScore>& scores,
                         const std::string& key);

}  // namespace lebkit
