#include <cmath>
#include <random>

#include "doctest.h"
#include "lebkit/metrics.hpp"

using namespace lebkit;

namespace {

const std::string kFix = LEBKIT_FIXTURES;

struct Fixture {
  ConcretenessLexicon lex = load_concreteness({kFix + "/conc10.tsv"});
  WordNetStore wn = load_wordnet(kFix + "/wordnet10");
  Resources res() const { return Resources{&lex, &wn, NegationCues()}; }
};

void check_opt(const std::optional<double>& got,
               const std::optional<double>& want) {
  REQUIRE(got.has_value() == want.has_value());
  if (want) CHECK(*got == doctest::Approx(*want).epsilon(1e-12));
}

}  // namespace

TEST_CASE("formula endpoints") {
  CHECK(noun_specificity_from_depth(0) == 1.2);
  CHECK(noun_specificity_from_depth(19) == 5.0);
  CHECK(noun_specificity_from_depth(40) == 5.0);
  CHECK(adjective_specificity_from_relations(7, 7) == 1.0);
  CHECK(adjective_specificity_from_relations(0, 7) == 5.0);
  CHECK(adjective_specificity_from_relations(9, 7) == 1.0);
  for (std::size_t d = 0; d < 19; ++d) {
    CHECK(noun_specificity_from_depth(d) < noun_specificity_from_depth(d + 1));
  }
  for (std::size_t r = 0; r < 50; ++r) {
    CHECK(adjective_specificity_from_relations(r, 50) >
          adjective_specificity_from_relations(r + 1, 50));
  }
}

TEST_CASE("specificity on the WordNet fixture") {
  auto wn = load_wordnet(kFix + "/wordnet");
  CHECK(noun_specificity("entity", wn) == 1.2);
  CHECK(noun_specificity("dog", wn) == doctest::Approx(1 + 4 * 15.0 / 20));
  CHECK(!noun_specificity("zzzz", wn));
  CHECK(adjective_specificity("good", wn) == 1.0);
  CHECK(!adjective_specificity("zzzz", wn));
  CHECK(*adjective_specificity("careful", wn) > *adjective_specificity("punctual", wn));
  CHECK(*adjective_specificity("punctual", wn) > *adjective_specificity("unpunctual", wn));

  auto one = specificity_score(analyze_text("entity"), wn);
  CHECK(one.score == 1.2);
  auto nouns = specificity_score(analyze_text("the dog and the cheese"), wn);
  CHECK(nouns.noun_eligible == 2);
  CHECK(!nouns.coverage_adj());
  CHECK(nouns.coverage_noun() == 1.0);
}

TEST_CASE("concreteness basics") {
  ConcretenessLexicon lex;
  lex.add("dog", 2.0);
  lex.add("cheese", 4.0);
  auto r = concreteness_score(analyze_text("dog cheese"), lex);
  CHECK(r.score == 3.0);
  CHECK(r.coverage() == 1.0);
  auto none = concreteness_score(analyze_text("of the . !"), lex);
  CHECK(!none.score);
  CHECK(none.eligible == 0);
  CHECK(!none.coverage());

  auto full = load_concreteness({kFix + "/concreteness/unigrams.tsv",
                                 kFix + "/concreteness/multiwords.csv"});
  auto banana = concreteness_score(analyze_text("banana"), full);
  CHECK(banana.score == doctest::Approx(4.93));
  CHECK(banana.coverage() == 1.0);
  // "on time" is matched as one expression; "time" is not scored again.
  auto ot = concreteness_score(analyze_text("always on time"), full);
  CHECK(ot.score == doctest::Approx(2.35));
  CHECK(ot.found == 1);
  // Lemma-sequence match: "woke up" -> "wake up".
  auto wu = concreteness_score(analyze_text("he woke up"), full);
  CHECK(wu.score == doctest::Approx(3.70));
}

TEST_CASE("hand-computed fixture: five texts") {
  Fixture f;
  auto res = f.res();
  REQUIRE(f.wn.max_adjective_relations() == 3);

  struct Want {
    const char* text;
    std::size_t n;
    std::optional<double> conc, spec;
    double neg;
    std::optional<double> cov_c, cov_n, cov_a;
  };
  const double sluggish = 5.0 - 4.0 * std::log(3.0) / std::log(4.0);
  const std::vector<Want> want = {
      {"The alpha is quick.", 5, 2.25, 1.2, 0.0, 1.0, 1.0, 1.0},
      {"Alpha beta runs, not slow.", 7, 2.0, 3.8 / 3, 1.0 / 7, 1.0, 1.0, 1.0},
      {"Iota never meets delta or zzzz.", 7, 5.0, 2.4, 1.0 / 7, 0.25, 2.0 / 3,
       std::nullopt},
      {"It is calm and sluggish.", 6, 2.0, (3.0 + sluggish) / 2, 0.0, 0.5,
       std::nullopt, 1.0},
      {"No.", 2, std::nullopt, std::nullopt, 0.5, std::nullopt, std::nullopt,
       std::nullopt},
  };
  std::vector<TextScore> scores;
  for (const auto& w : want) {
    CAPTURE(w.text);
    auto s = score_text(w.text, res);
    CHECK(s.n_tokens == w.n);
    check_opt(s.concreteness, w.conc);
    check_opt(s.specificity, w.spec);
    CHECK(s.negation_rate == doctest::Approx(w.neg).epsilon(1e-15));
    check_opt(s.coverage_concreteness, w.cov_c);
    check_opt(s.coverage_spec_noun, w.cov_n);
    check_opt(s.coverage_spec_adj, w.cov_a);
    scores.push_back(s);
  }
  auto agg = aggregate(scores, "fixture");
  CHECK(agg.n_texts == 5);
  CHECK(agg.concreteness.n == 4);
  CHECK(*agg.concreteness.mean == doctest::Approx(2.8125));
  CHECK(*agg.concreteness.sd == doctest::Approx(std::sqrt(1.60546875)));
  CHECK(agg.specificity.n == 4);
  CHECK(agg.negation_rate.n == 5);
}

TEST_CASE("score_text edge cases and determinism") {
  Fixture f;
  auto res = f.res();
  auto e = score_text("", res);
  CHECK(e.n_tokens == 0);
  CHECK(!e.concreteness);
  CHECK(!e.specificity);
  CHECK(e.negation_rate == 0.0);
  CHECK(!e.coverage_concreteness);
  CHECK(score_text("Alpha beta runs, not slow.", res) ==
        score_text("Alpha beta runs, not slow.", res));
  CHECK(negation_rate(analyze_text("I am not always on time")) ==
        doctest::Approx(1.0 / 6));
  CHECK(negation_rate(analyze_text("I am always on time")) == 0.0);
  CHECK_THROWS_AS(score_text("x", Resources{}), Error);
}

TEST_CASE("aggregate") {
  TextScore a, b;
  a.concreteness = 3.0;
  b.concreteness = 4.0;
  auto g = aggregate({a, b}, "k");
  CHECK(g.concreteness.mean == 3.5);
  CHECK(g.concreteness.sd == 0.5);
  CHECK(!g.specificity.mean);
  auto single = aggregate({a}, "k");
  CHECK(single.concreteness.sd == 0.0);
  CHECK_THROWS_AS(aggregate({}, "k"), Error);
}

TEST_CASE("property: multiword tokens are never rescored as unigrams") {
  ConcretenessLexicon lex;
  lex.add("x", 5.0);
  lex.add("y", 5.0);
  lex.add("z", 5.0);
  lex.add("x y", 1.0);
  std::mt19937 rng(7);
  const char* vocab[] = {"x", "y", "z"};
  for (int iter = 0; iter < 2000; ++iter) {
    std::string raw;
    std::size_t n = 1 + rng() % 12;
    std::size_t expect_mw = 0;
    std::string prev;
    std::vector<std::string> seq;
    for (std::size_t i = 0; i < n; ++i) seq.push_back(vocab[rng() % 3]);
    for (std::size_t i = 0; i < n; ++i) raw += (i ? " " : "") + seq[i];
    for (std::size_t i = 0; i + 1 < n;) {
      if (seq[i] == "x" && seq[i + 1] == "y") {
        ++expect_mw;
        i += 2;
      } else {
        ++i;
      }
    }
    auto r = concreteness_score(analyze_text(raw), lex);
    std::size_t unigrams = n - 2 * expect_mw;
    CHECK(r.found == expect_mw + unigrams);
    CHECK(*r.score == doctest::Approx((expect_mw * 1.0 + unigrams * 5.0) /
                                      static_cast<double>(expect_mw + unigrams)));
  }
}

TEST_CASE("property: outputs stay in range and score_many matches serial") {
  auto lex = load_concreteness({kFix + "/concreteness/unigrams.tsv",
                                kFix + "/concreteness/multiwords.csv"});
  auto wn = load_wordnet(kFix + "/wordnet");
  Resources res{&lex, &wn, NegationCues()};
  const std::vector<std::string> vocab = {
      "dog", "cheese", "happy", "not", "good", "the", "man", "never", "on",
      "time", "teacher", "large", "runs", "Munich", ",", ".", "punctual",
      "careful", "office", "work", "calm", "spicy", "food", "no"};
  std::mt19937 rng(1);
  std::vector<std::string> texts;
  for (int i = 0; i < 300; ++i) {
    std::string t;
    std::size_t n = rng() % 20;
    for (std::size_t k = 0; k < n; ++k) t += (k ? " " : "") + vocab[rng() % vocab.size()];
    texts.push_back(t);
  }
  auto par = score_many(texts, res, 4);
  auto ser = score_many(texts, res, 1);
  REQUIRE(par.size() == texts.size());
  CHECK(par == ser);
  for (const auto& s : par) {
    if (s.concreteness) {
      CHECK(*s.concreteness >= 1.0);
      CHECK(*s.concreteness <= 5.0);
    }
    if (s.specificity) {
      CHECK(*s.specificity >= 1.0);
      CHECK(*s.specificity <= 5.0);
    }
    CHECK(s.negation_rate >= 0.0);
    CHECK(s.negation_rate <= 1.0);
    for (auto c : {s.coverage_concreteness, s.coverage_spec_noun, s.coverage_spec_adj}) {
      if (c) {
        CHECK(*c >= 0.0);
        CHECK(*c <= 1.0);
      }
    }
  }
}
