#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "lebkit/corpus.hpp"

using namespace lebkit;

namespace {

Corpus csv(const std::string& s) { return parse_corpus(s, CorpusFormat::Csv); }

const char* kHeader = "category,attribute,class,source_id\n";

}  // namespace

TEST_CASE("class labels") {
  CHECK(parse_stereo_class("NationalityOrigin") == StereoClass::NationalityOrigin);
  CHECK(parse_stereo_class("Nationality/Place of origin") ==
        StereoClass::NationalityOrigin);
  CHECK(parse_stereo_class("astrological sign") == StereoClass::AstrologicalSign);
  CHECK(parse_stereo_class(" AGE ") == StereoClass::Age);
  CHECK(!parse_stereo_class("Religion"));
  for (auto c : kAllClasses) CHECK(parse_stereo_class(to_string(c)) == c);
}

TEST_CASE("load_corpus deduplicates") {
  auto c = csv(std::string(kHeader) +
               "German,always on time,NationalityOrigin,r1\n"
               "German,always on time,NationalityOrigin,r2\n");
  CHECK(c.size() == 1);
  CHECK(c.duplicate_count() == 1);
  CHECK(c.items()[0].source_id == "r1");
  CHECK(c.mentions_preserved());
  CHECK(c.mentions() == std::vector<std::size_t>{2});
  CHECK(!c.warnings().empty());

  auto n = csv(std::string(kHeader) + " german , Always  on time,NationalityOrigin,\n"
               "German,always on time,NationalityOrigin,\n");
  CHECK(n.size() == 1);
}

TEST_CASE("empty inputs") {
  CHECK(csv("").size() == 0);
  CHECK(csv(kHeader).size() == 0);
  CHECK(parse_corpus("", CorpusFormat::Jsonl).empty());
  CHECK(parse_corpus("\n\n", CorpusFormat::Jsonl).empty());
}

TEST_CASE("CSV quoting and errors") {
  auto c = csv(std::string(kHeader) +
               "\"Scorpio\",\"hold grudges, \"\"forever\"\"\",AstrologicalSign,x\r\n"
               "woman,\"cries\nat movies\",Gender,y\n");
  REQUIRE(c.size() == 2);
  CHECK(c.items()[0].attribute == "hold grudges, \"forever\"");
  CHECK(c.items()[1].attribute == "cries\nat movies");

  try {
    csv(std::string(kHeader) + "a,b,Gender,1\nc,d,Religion,2\n");
    FAIL("expected error");
  } catch (const CorpusError& e) {
    CHECK(e.row() == 3);
    CHECK(std::string(e.what()).find("Religion") != std::string::npos);
  }
  try {
    csv(std::string(kHeader) + "a,b,Gender\n");
    FAIL("expected error");
  } catch (const CorpusError& e) {
    CHECK(e.row() == 2);
  }
  CHECK_THROWS_AS(csv(std::string(kHeader) + "a,\"b,Gender,1\n"), CorpusError);
  CHECK_THROWS_AS(csv(std::string(kHeader) + " ,b,Gender,1\n"), CorpusError);
  CHECK_THROWS_AS(csv("cat,attr,class\nx,y,Age\n"), CorpusError);
  CHECK_THROWS_AS(load_corpus("/nonexistent/file.csv"), Error);
}

TEST_CASE("explicit column map and mentions column") {
  LoadOptions opt;
  opt.columns.category = "group";
  opt.columns.attribute = "trait";
  opt.columns.stereo_class = "type";
  opt.columns.mentions = "n";
  auto c = parse_corpus("trait,group,type,n\nbrave,firefighter,Profession,4\n",
                        CorpusFormat::Csv, opt);
  REQUIRE(c.size() == 1);
  CHECK(c.items()[0].category == "firefighter");
  CHECK(c.mentions_preserved());
  auto d = class_distribution(c);
  CHECK(d.counts[StereoClass::Profession] == ClassCounts{4, 1});
  CHECK(d.mentions_from_provenance);
}

TEST_CASE("JSONL loading") {
  auto c = parse_corpus(
      "{\"category\":\"GenZ\",\"attribute\":\"always online\",\"class\":\"Age\"}\n"
      "\n"
      "{\"category\":\"Leo\",\"attribute\":\"loud\",\"class\":\"AstrologicalSign\","
      "\"source_id\":\"t3_abc\"}\n",
      CorpusFormat::Jsonl);
  REQUIRE(c.size() == 2);
  CHECK(c.items()[1].source_id == "t3_abc");
  CHECK(!c.mentions_preserved());
  try {
    parse_corpus("{\"category\":\"a\",\"attribute\":\"b\",\"class\":\"Age\"}\n{bad\n",
                 CorpusFormat::Jsonl);
    FAIL("expected error");
  } catch (const CorpusError& e) {
    CHECK(e.row() == 2);
  }
  CHECK_THROWS_AS(parse_corpus("{\"category\":\"a\",\"class\":\"Age\"}\n",
                               CorpusFormat::Jsonl),
                  CorpusError);
}

TEST_CASE("class_distribution") {
  auto c = csv(std::string(kHeader) + "boomer,hates phones,Age,1\n");
  auto d = class_distribution(c);
  CHECK(d.counts.size() == 8);
  CHECK(d.counts[StereoClass::Age] == ClassCounts{1, 1});
  for (auto cls : kAllClasses) {
    if (cls != StereoClass::Age) CHECK(d.counts[cls] == ClassCounts{0, 0});
  }
  CHECK(!d.mentions_from_provenance);
}

TEST_CASE("normalization table") {
  auto n = AttributeNormalizer::parse("# from\tto\ncan't drive\tcannot drive\n");
  CHECK(n.size() == 1);
  LoadOptions opt;
  opt.normalizer = &n;
  auto c = parse_corpus(std::string(kHeader) + "Asian,Can't  drive,Race,1\n"
                        "Asian,cannot drive,Race,2\n",
                        CorpusFormat::Csv, opt);
  REQUIRE(c.size() == 1);
  CHECK(c.items()[0].attribute == "cannot drive");
  CHECK_THROWS_AS(AttributeNormalizer::parse("only one column\n"), CorpusError);
}

TEST_CASE("serialization round-trip") {
  auto a = csv(std::string(kHeader) + "German,punctual,NationalityOrigin,1\n"
               "German,punctual,NationalityOrigin,2\n"
               "nurse,\"kind, \"\"caring\"\"\",Profession,3\n");
  auto b = parse_corpus(serialize_jsonl(a), CorpusFormat::Jsonl);
  CHECK(a == b);
  CHECK(serialize_jsonl(b) == serialize_jsonl(a));

  auto c = csv(std::string(kHeader) + "Leo,loud,AstrologicalSign,1\n");
  auto d = parse_corpus(serialize_jsonl(c), CorpusFormat::Jsonl);
  CHECK(c == d);
  CHECK(!d.mentions_preserved());

  auto path = std::filesystem::temp_directory_path() / "lebkit_corpus_rt.jsonl";
  {
    std::ofstream out(path, std::ios::binary);
    out << serialize_jsonl(a);
  }
  CHECK(load_corpus(path.string()) == a);
  std::filesystem::remove(path);
}

TEST_CASE("sample_random_attributes") {
  auto c = csv(std::string(kHeader) + "A,x,Other,\nB,y,Other,\nC,z,Other,\n");
  auto s = sample_random_attributes(c, "A", 2, 7);
  REQUIRE(s.size() == 2);
  CHECK(std::find(s.begin(), s.end(), "x") == s.end());
  CHECK(s[0] != s[1]);
  CHECK(sample_random_attributes(c, "A", 2, 7) == s);
  CHECK(sample_random_attributes(c, "a", 2, 7) == s);
  CHECK(sample_random_attributes(c, "A", 0, 7).empty());
  CHECK_THROWS_AS(sample_random_attributes(c, "A", 3, 7), Error);
  CHECK_THROWS_AS(sample_random_attributes(c, "Q", 1, 7), Error);
}

TEST_CASE("property: sampled attributes never belong to the category") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<StereoItem> rows;
    int ncat = 2 + static_cast<int>(rng() % 6);
    int nattr = 4 + static_cast<int>(rng() % 12);
    for (int i = 0; i < 30; ++i) {
      StereoItem it;
      it.category = "cat" + std::to_string(rng() % ncat);
      it.attribute = "attr" + std::to_string(rng() % nattr);
      rows.push_back(it);
    }
    auto c = Corpus::from_rows(rows);
    for (const auto& [cat, attrs] : c.category_index()) {
      std::size_t pool = c.attributes().size() - attrs.size();
      std::size_t k = pool == 0 ? 0 : rng() % (pool + 1);
      std::uint64_t seed = rng();
      auto s = sample_random_attributes(c, cat, k, seed);
      CHECK(s.size() == k);
      std::set<std::string> uniq(s.begin(), s.end());
      CHECK(uniq.size() == k);
      for (const auto& a : s) CHECK(!attrs.count(normalize_label(a)));
      CHECK(sample_random_attributes(c, cat, k, seed) == s);
    }
  }
}

TEST_CASE("sampling is uniform over the pool") {
  std::vector<StereoItem> rows;
  for (int i = 0; i < 5; ++i) rows.push_back({"A", "a" + std::to_string(i), StereoClass::Other, ""});
  rows.push_back({"B", "b", StereoClass::Other, ""});
  auto c = Corpus::from_rows(rows);
  std::map<std::string, int> hits;
  const int n = 20000;
  for (int s = 0; s < n; ++s) hits[sample_random_attributes(c, "B", 1, s)[0]]++;
  CHECK(hits.size() == 5);
  for (const auto& [a, h] : hits) CHECK(std::abs(h - n / 5) < 400);
}
