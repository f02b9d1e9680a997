#include "lebkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace lebkit {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

bool content_pos(Pos p) {
  return p == Pos::Noun || p == Pos::Verb || p == Pos::Adjective;
}

}  // namespace

std::optional<double> ConcretenessResult::coverage() const {
  return ratio(found, eligible);
}
std::optional<double> SpecificityResult::coverage_noun() const {
  return ratio(noun_found, noun_eligible);
}
std::optional<double> SpecificityResult::coverage_adj() const {
  return ratio(adj_found, adj_eligible);
}

ConcretenessResult concreteness_score(const TaggedText& text,
                                      const ConcretenessLexicon& lex) {
  const auto& toks = text.tokens();
  const std::size_t n = toks.size();
  std::vector<std::string> surf(n);
  for (std::size_t i = 0; i < n; ++i) surf[i] = fold(toks[i].surface);

  ConcretenessResult res;
  double sum = 0.0;
  std::size_t i = 0;
  const std::size_t window = lex.max_mwe_len();
  while (i < n) {
    bool matched = false;
    for (std::size_t len = std::min(window, n - i); len >= 2 && !matched; --len) {
      std::string by_surface = surf[i];
      std::string by_lemma = toks[i].lemma;
      for (std::size_t k = 1; k < len; ++k) {
        by_surface += ' ' + surf[i + k];
        by_lemma += ' ' + toks[i + k].lemma;
      }
      auto r = lex.multiword(by_surface);
      if (!r) r = lex.multiword(by_lemma);
      if (r) {
        sum += *r;
        ++res.found;
        ++res.eligible;
        i += len;
        matched = true;
      }
    }
    if (matched) continue;
    if (content_pos(toks[i].pos)) {
      ++res.eligible;
      auto r = lex.unigram(surf[i]);
      if (!r) r = lex.unigram(toks[i].lemma);
      if (r) {
        sum += *r;
        ++res.found;
      }
    }
    ++i;
  }
  if (res.found > 0) res.score = sum / static_cast<double>(res.found);
  return res;
}

double noun_specificity_from_depth(std::size_t d) {
  d = std::min(d, WordNetStore::kMaxDepth);
  return 1.0 + 4.0 * (1.0 + static_cast<double>(d)) / 20.0;
}

double adjective_specificity_from_relations(std::size_t r, std::size_t r_max) {
  if (r_max == 0) return r == 0 ? 5.0 : 1.0;
  double v = 5.0 - 4.0 * std::log1p(static_cast<double>(r)) /
                       std::log1p(static_cast<double>(r_max));
  return std::clamp(v, 1.0, 5.0);
}

std::optional<double> noun_specificity(std::string_view lemma,
                                       const WordNetStore& store) {
  auto d = store.hypernym_count(lemma);
  if (!d) return std::nullopt;
  return noun_specificity_from_depth(*d);
}

std::optional<double> adjective_specificity(std::string_view lemma,
                                            const WordNetStore& store) {
  auto r = store.adjective_relations(lemma);
  if (!r) return std::nullopt;
  return adjective_specificity_from_relations(*r,
                                              store.max_adjective_relations());
}

SpecificityResult specificity_score(const TaggedText& text,
                                    const WordNetStore& store) {
  SpecificityResult res;
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& t : text.tokens()) {
    std::optional<double> v;
    if (t.pos == Pos::Noun) {
      ++res.noun_eligible;
      v = noun_specificity(t.lemma, store);
      if (!v) v = noun_specificity(fold(t.surface), store);
      if (v) ++res.noun_found;
    } else if (t.pos == Pos::Adjective) {
      ++res.adj_eligible;
      v = adjective_specificity(t.lemma, store);
      if (!v) v = adjective_specificity(fold(t.surface), store);
      if (v) ++res.adj_found;
    }
    if (v) {
      sum += *v;
      ++count;
    }
  }
  if (count > 0) res.score = sum / static_cast<double>(count);
  return res;
}

double negation_rate(const TaggedText& text) {
  if (text.n_tokens() == 0) return 0.0;
  std::size_t cues = 0;
  for (const auto& t : text.tokens()) cues += t.is_negation_cue ? 1 : 0;
  return static_cast<double>(cues) / static_cast<double>(text.n_tokens());
}

TextScore score_tagged(const TaggedText& text, const Resources& res) {
  if (res.concreteness == nullptr || res.wordnet == nullptr) {
    throw Error("scoring needs a concreteness lexicon and a WordNet store");
  }
  TextScore s;
  s.n_tokens = text.n_tokens();
  auto c = concreteness_score(text, *res.concreteness);
  s.concreteness = c.score;
  s.coverage_concreteness = c.coverage();
  auto sp = specificity_score(text, *res.wordnet);
  s.specificity = sp.score;
  s.coverage_spec_noun = sp.coverage_noun();
  s.coverage_spec_adj = sp.coverage_adj();
  s.negation_rate = negation_rate(text);
  return s;
}

TextScore score_text(std::string_view raw, const Resources& res) {
  return score_tagged(analyze_text(raw, res.cues), res);
}

std::vector<TextScore> score_many(const std::vector<std::string>& texts,
                                  const Resources& res, unsigned threads) {
  std::vector<TextScore> out(texts.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, texts.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < texts.size(); ++i) out[i] = score_text(texts[i], res);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < texts.size(); i += threads) {
            out[i] = score_text(texts[i], res);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary m;
  m.n = values.size();
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  m.mean = mean;
  m.sd = std::sqrt(ss / static_cast<double>(values.size()));
  return m;
}

AggregateScore aggregate(const std::vector<TextScore>& scores,
                         const std::string& key) {
  if (scores.empty()) throw Error("aggregate over an empty collection: " + key);
  std::vector<double> conc, spec, neg;
  for (const auto& s : scores) {
    if (s.concreteness) conc.push_back(*s.concreteness);
    if (s.specificity) spec.push_back(*s.specificity);
    neg.push_back(s.negation_rate);
  }
  AggregateScore a;
  a.key = key;
  a.n_texts = scores.size();
  a.concreteness = summarize(conc);
  a.specificity = summarize(spec);
  a.negation_rate = summarize(neg);
  return a;
}

}  // namespace lebkit
