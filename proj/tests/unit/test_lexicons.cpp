#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "lebkit/lexicons.hpp"

using namespace lebkit;

namespace {

const std::string kFix = LEBKIT_FIXTURES;

std::string write_temp(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p.string();
}

}  // namespace

TEST_CASE("concreteness norms load") {
  auto lex = load_concreteness({kFix + "/concreteness/unigrams.tsv",
                                kFix + "/concreteness/multiwords.csv"});
  CHECK(lex.unigram("banana") == doctest::Approx(4.93));
  CHECK(lex.multiword("on time") == doctest::Approx(2.35));
  CHECK(lex.multiword("roll out") == doctest::Approx(3.27));
  CHECK(lex.max_mwe_len() == 3);
  CHECK(!lex.unigram("zzzz"));
  for (const auto& [k, r] : lex.unigrams()) {
    CHECK(r >= 1.0);
    CHECK(r <= 5.0);
    CHECK(k.find(' ') == std::string::npos);
  }
  std::size_t longest = 0;
  for (const auto& [k, r] : lex.multiwords()) {
    CHECK(r >= 1.0);
    CHECK(r <= 5.0);
    auto n = static_cast<std::size_t>(std::count(k.begin(), k.end(), ' ') + 1);
    CHECK(n >= 2);
    longest = std::max(longest, n);
  }
  CHECK(longest == lex.max_mwe_len());
}

TEST_CASE("concreteness collisions and errors") {
  ConcretenessLexicon lex;
  parse_concreteness(lex, "word,rating\nDog,2.0\n", "a");
  parse_concreteness(lex, "dog\t4.0\n", "b");
  CHECK(lex.unigram("dog") == 4.0);
  CHECK(lex.warnings().size() == 1);

  auto p1 = write_temp("lebkit_c1.csv", "Word,Conc.M\nx,2\n");
  auto p2 = write_temp("lebkit_c2.csv", "Word,Conc.M\nx,3\n");
  auto merged = load_concreteness({p1, p2});
  CHECK(merged.unigram("x") == 3.0);
  CHECK(merged.warnings().size() == 1);

  ConcretenessLexicon bad;
  CHECK_THROWS_AS(parse_concreteness(bad, "w,rating\nx,5.5\n", "s"), LexiconError);
  CHECK_THROWS_AS(parse_concreteness(bad, "w,rating\nx,0.9\n", "s"), LexiconError);
  CHECK_THROWS_AS(parse_concreteness(bad, "w,rating\nx,high\n", "s"), LexiconError);
  CHECK_THROWS_AS(parse_concreteness(bad, "w,stuff\nx,y\n", "s"), LexiconError);
  CHECK_THROWS_AS(load_concreteness({"/no/such/file.tsv"}), LexiconError);

  ConcretenessLexicon mw;
  mw.add("Can't stand", 2.0);
  CHECK(mw.multiword("ca n't stand") == 2.0);
  CHECK(mw.max_mwe_len() == 3);
  CHECK(ConcretenessLexicon::key_of("  Roll   OUT ") == "roll out");
}

TEST_CASE("WordNet fixture: noun closures match the standalone oracle") {
  auto wn = load_wordnet(kFix + "/wordnet");
  // Values printed by tests/fixtures/wordnet_oracle.py.
  CHECK(wn.hypernym_count("entity") == 0u);
  CHECK(wn.hypernym_count("dog") == 14u);
  CHECK(wn.hypernym_count("teacher") == 11u);
  CHECK(wn.hypernym_count("man") == 9u);
  CHECK(wn.hypernym_count("time") == 5u);
  CHECK(wn.hypernym_count("cheese") == 7u);
  CHECK(wn.hypernym_count("Munich") == 8u);
  CHECK(wn.hypernym_count("office") == 4u);
  CHECK(!wn.hypernym_count("zzzz"));
  CHECK(!wn.has_adjective("zzzz"));

  const auto* dog = wn.noun_senses("dog");
  REQUIRE(dog);
  bool has_animal = false;
  for (const auto& id : wn.hypernym_closure(dog->front())) {
    for (const auto& l : wn.noun_synsets().at(id).lemmas) {
      has_animal |= l == "animal";
    }
  }
  CHECK(has_animal);
  const auto* entity = wn.noun_senses("entity");
  REQUIRE(entity);
  CHECK(wn.noun_synsets().at(entity->front()).hypernyms.empty());
}

TEST_CASE("WordNet fixture: adjective relation counts match the oracle") {
  auto wn = load_wordnet(kFix + "/wordnet");
  const std::map<std::string, std::size_t> expected = {
      {"punctual", 2}, {"unpunctual", 3}, {"late", 4}, {"good", 7},
      {"full", 5},     {"bad", 3},        {"fine", 3}, {"nice", 2},
      {"awful", 3},    {"happy", 3},      {"unhappy", 2}, {"glad", 2},
      {"large", 4},    {"big", 3},        {"small", 3}, {"little", 2},
      {"huge", 4},     {"careful", 1},    {"german", 1}, {"calm", 1},
      {"spicy", 3},    {"hot", 3}};
  for (const auto& [lemma, r] : expected) {
    CAPTURE(lemma);
    CHECK(wn.adjective_relations(lemma) == r);
  }
  CHECK(wn.max_adjective_relations() == 7);
  CHECK(wn.adjective_entry("punctual") == AdjRelations{0, 0, 1, 1});
  CHECK(wn.adjective_entry("careful") == AdjRelations{0, 0, 0, 1});
  CHECK(!wn.adjective_relations("dog"));
}

TEST_CASE("ten-synset taxonomy reproduces hand-computed closures") {
  auto wn = load_wordnet(kFix + "/wordnet10");
  const std::map<std::string, std::size_t> hand = {
      {"root", 0}, {"alpha", 1}, {"beta", 1},  {"gamma", 2}, {"delta", 3},
      {"epsilon", 5}, {"zeta", 2}, {"eta", 6}, {"theta", 3}, {"iota", 9}};
  CHECK(wn.noun_synsets().size() == 10);
  for (const auto& [lemma, d] : hand) {
    CAPTURE(lemma);
    CHECK(wn.hypernym_count(lemma) == d);
  }
}

TEST_CASE("load_wordnet errors") {
  CHECK_THROWS_AS(load_wordnet("/no/such/dir"), LexiconError);
  auto dir = std::filesystem::temp_directory_path() / "lebkit_wn_bad";
  std::filesystem::remove_all(dir);
  std::filesystem::copy(kFix + "/wordnet", dir);
  {
    auto data = read_file((dir / "data.noun").string());
    auto pos = data.find('\n', data.find("  3 ")) + 1;
    data.replace(pos, 8, "0000x000");
    std::ofstream(dir / "data.noun", std::ios::binary) << data;
  }
  CHECK_THROWS_AS(load_wordnet(dir.string()), LexiconError);
  std::filesystem::copy(kFix + "/wordnet/data.noun", dir / "data.noun",
                        std::filesystem::copy_options::overwrite_existing);
  {
    auto data = read_file((dir / "data.noun").string());
    auto pos = data.find('\n', data.find("  3 ")) + 1;
    data.insert(pos, " ");
    std::ofstream(dir / "data.noun", std::ios::binary) << data;
  }
  CHECK_THROWS_AS(load_wordnet(dir.string()), LexiconError);
  std::filesystem::remove(dir / "index.adj");
  CHECK_THROWS_AS(load_wordnet(dir.string()), LexiconError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("builder validation") {
  WordNetStore s;
  s.add_noun_synset("a", {"a"}, {"b"});
  s.add_noun_synset("b", {"b"}, {"a"});
  CHECK_THROWS_AS(s.finalize(), LexiconError);

  WordNetStore t;
  t.add_noun_synset("a", {"a"}, {"missing"});
  CHECK_THROWS_AS(t.finalize(), LexiconError);

  WordNetStore u;
  u.add_noun_sense("x", "nope");
  CHECK_THROWS_AS(u.finalize(), LexiconError);
  CHECK_THROWS_AS(u.hypernym_count("x"), LexiconError);
}

TEST_CASE("clamp at 19") {
  WordNetStore s;
  for (int i = 0; i < 30; ++i) {
    std::vector<std::string> h;
    if (i > 0) h.push_back("s" + std::to_string(i - 1));
    s.add_noun_synset("s" + std::to_string(i), {"w" + std::to_string(i)}, h);
    s.add_noun_sense("w" + std::to_string(i), "s" + std::to_string(i));
  }
  s.finalize();
  CHECK(s.hypernym_count("w5") == 5u);
  CHECK(s.hypernym_count("w19") == 19u);
  CHECK(s.hypernym_count("w29") == 19u);
  CHECK(s.hypernym_closure("s29").size() == 29);
}

TEST_CASE("property: adding a hypernym edge never decreases d") {
  std::mt19937 rng(4242);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 3 + static_cast<int>(rng() % 25);
    // Edges only point to lower indices, so the graph stays acyclic.
    std::vector<std::vector<std::string>> hyps(n);
    for (int i = 1; i < n; ++i) {
      int k = static_cast<int>(rng() % 3);
      for (int j = 0; j < k; ++j) hyps[i].push_back("s" + std::to_string(rng() % i));
    }
    auto build = [&] {
      WordNetStore s;
      for (int i = 0; i < n; ++i) {
        s.add_noun_synset("s" + std::to_string(i), {"w" + std::to_string(i)}, hyps[i]);
        s.add_noun_sense("w" + std::to_string(i), "s" + std::to_string(i));
      }
      s.finalize();
      return s;
    };
    auto before = build();
    int from = 1 + static_cast<int>(rng() % (n - 1));
    hyps[from].push_back("s" + std::to_string(rng() % from));
    auto after = build();
    for (int i = 0; i < n; ++i) {
      auto w = "w" + std::to_string(i);
      auto d0 = before.hypernym_count(w);
      auto d1 = after.hypernym_count(w);
      REQUIRE(d0);
      REQUIRE(d1);
      CHECK(*d1 >= *d0);
      CHECK(*d1 <= WordNetStore::kMaxDepth);
    }
  }
}

TEST_CASE("adjective sense implies R >= 1") {
  auto wn = load_wordnet(kFix + "/wordnet");
  for (auto lemma : {"punctual", "careful", "calm", "good", "hot"}) {
    CHECK(wn.adjective_relations(lemma).value_or(0) >= 1);
  }
}

TEST_CASE("real resources when available") {
  const char* norms = std::getenv("LEBKIT_CONCRETENESS");
  const char* wndir = std::getenv("LEBKIT_WORDNET");
  if (norms) {
    auto lex = load_concreteness({norms});
    MESSAGE("banana rating in released norms: "
            << lex.unigram("banana").value_or(-1));
    CHECK(lex.unigram("banana"));
  }
  if (wndir) {
    auto wn = load_wordnet(wndir);
    CHECK(wn.hypernym_count("entity") == 0u);
    CHECK(wn.hypernym_count("dog").value_or(0) > 0);
    CHECK(wn.adjective_relations("punctual").value_or(0) >= 1);
  }
}
