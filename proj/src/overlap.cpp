#include "lebkit/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lebkit/strings.hpp"
#include "lebkit/text.hpp"

namespace lebkit {

namespace {

void require_tokens(const std::vector<std::string>& c, const std::vector<std::string>& r) {
  if (c.empty() || r.empty()) throw Error("overlap measures need non-empty texts");
}

std::map<std::vector<std::string>, std::size_t> ngrams(const std::vector<std::string>& t,
                                                       std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> out;
  for (std::size_t i = 0; i + n <= t.size(); ++i) {
    ++out[std::vector<std::string>(t.begin() + i, t.begin() + i + n)];
  }
  return out;
}

std::string strip_article(std::string s) {
  for (std::string_view art : {"a ", "an ", "the "}) {
    if (s.starts_with(art)) return s.substr(art.size());
  }
  return s;
}

}  // namespace

std::vector<std::string> overlap_tokens(std::string_view text) {
  auto toks = tokenize(text);
  for (auto& t : toks) t = fold(t);
  return toks;
}

double bleu(const std::vector<std::string>& c, const std::vector<std::string>& r) {
  require_tokens(c, r);
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto cn = ngrams(c, n);
    auto rn = ngrams(r, n);
    std::size_t total = c.size() >= n ? c.size() - n + 1 : 0;
    std::size_t match = 0;
    for (const auto& [g, count] : cn) {
      auto it = rn.find(g);
      if (it != rn.end()) match += std::min(count, it->second);
    }
    double p;
    if (n == 1) {
      if (match == 0) return 0.0;
      p = static_cast<double>(match) / static_cast<double>(total);
    } else {
      p = (static_cast<double>(match) + 1.0) / (static_cast<double>(total) + 1.0);
    }
    log_sum += std::log(p);
  }
  double bp = c.size() >= r.size()
                  ? 1.0
                  : std::exp(1.0 - static_cast<double>(r.size()) / static_cast<double>(c.size()));
  return bp * std::exp(log_sum / 4.0);
}

double bleu(std::string_view candidate, std::string_view reference) {
  return bleu(overlap_tokens(candidate), overlap_tokens(reference));
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(const std::vector<std::string>& c, const std::vector<std::string>& r) {
  require_tokens(c, r);
  double lcs = static_cast<double>(lcs_length(c, r));
  if (lcs == 0.0) return 0.0;
  double p = lcs / static_cast<double>(c.size());
  double rec = lcs / static_cast<double>(r.size());
  return 2.0 * p * rec / (p + rec);
}

double rouge_l(std::string_view candidate, std::string_view reference) {
  return rouge_l(overlap_tokens(candidate), overlap_tokens(reference));
}

bool token_accuracy(std::string_view predicted, std::string_view gold) {
  return strip_article(normalize_label(predicted)) == strip_article(normalize_label(gold));
}

}  // namespace lebkit
