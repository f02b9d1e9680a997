#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lebkit {

// Case-folded word tokens (punctuation kept as tokens).
std::vector<std::string> overlap_tokens(std::string_view text);

// Sentence-level BLEU-4: clipped n-gram precisions, unigram unsmoothed,
// add-one smoothing for n = 2..4, geometric mean times brevity penalty.
// Throws Error when either text has no tokens.
double bleu(std::string_view candidate, std::string_view reference);
double bleu(const std::vector<std::string>& candidate,
            const std::vector<std::string>& reference);

// ROUGE-L F1 (beta = 1) over token LCS. Throws Error on empty input.
double rouge_l(std::string_view candidate, std::string_view reference);
double rouge_l(const std::vector<std::string>& candidate,
               const std::vector<std::string>& reference);

std::size_t lcs_length(const std::vector<std::string>& a,
                       const std::vector<std::string>& b);

// Equal after case folding, trimming, whitespace collapsing and removal of a
// leading "a", "an" or "the".
bool token_accuracy(std::string_view predicted, std::string_view gold);

}  // namespace lebkit
