#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "lebkit/analysis.hpp"
#include "lebkit/experiment.hpp"
#include "lebkit/lexicons.hpp"
#include "lebkit/metrics.hpp"
#include "../support/mock_server.hpp"
#include "../support/process.hpp"

using namespace lebkit;
namespace fs = std::filesystem;

namespace {

const fs::path kFix = LEBKIT_FIXTURES;
const fs::path kE2E = kFix / "e2e";
const std::string kCli = shell_quote(LEBKIT_CLI);

std::string resources() {
  return " --lexicon " + shell_quote((kFix / "concreteness" / "unigrams.tsv").string()) +
         " --lexicon " + shell_quote((kFix / "concreteness" / "multiwords.csv").string()) +
         " --wordnet " + shell_quote((kFix / "wordnet").string());
}

fs::path fresh_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("lebkit_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  for (auto& l : split(s, '\n')) {
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

}  // namespace

TEST_CASE("score writes one JSON line per input and a per-group aggregate") {
  auto dir = fresh_dir("score");
  std::ofstream(dir / "in.jsonl") << R"({"id": "a", "text": "dog idea", "group": "g1"})" "\n"
                                  << R"({"id": 7, "text": "I do not own a cat.", "group": "g1"})" "\n"
                                  << "\n"
                                  << R"({"id": "c", "text": "banana", "group": "g2"})" "\n";
  auto r = run_capture(kCli + " score --in " + shell_quote((dir / "in.jsonl").string()) +
                       " --aggregate " + shell_quote((dir / "agg.csv").string()) + resources());
  REQUIRE(r.exit_code == 0);
  auto out = lines_of(r.out);
  REQUIRE(out.size() == 3);

  auto a = nlohmann::json::parse(out[0]);
  CHECK(a["id"] == "a");
  CHECK(a["concreteness"].get<double>() == doctest::Approx((4.85 + 1.61) / 2));
  CHECK(a["negation_rate"].get<double>() == 0.0);
  CHECK(nlohmann::json::parse(out[1])["id"] == "7");
  CHECK(nlohmann::json::parse(out[1])["negation_rate"].get<double>() > 0.0);

  // Same numbers as the library.
  auto lex = load_concreteness({(kFix / "concreteness" / "unigrams.tsv").string(),
                                (kFix / "concreteness" / "multiwords.csv").string()});
  auto wn = load_wordnet((kFix / "wordnet").string());
  Resources res{&lex, &wn, NegationCues()};
  auto s = score_text("I do not own a cat.", res);
  auto b = nlohmann::json::parse(out[1]);
  CHECK(b["n_tokens"].get<std::size_t>() == s.n_tokens);
  CHECK(b["negation_rate"].get<double>() == s.negation_rate);
  CHECK(b["concreteness"].get<double>() == *s.concreteness);

  auto agg = lines_of(slurp_file(dir / "agg.csv"));
  REQUIRE(agg.size() == 3);
  CHECK(agg[0].starts_with("group,n_texts,concreteness_mean"));
  CHECK(agg[1].starts_with("g1,2,"));
  CHECK(agg[2] == "g2,1,4.93,0.00,,,0.00,0.00");
}

TEST_CASE("score reports a bad input line and missing resources") {
  auto dir = fresh_dir("score_bad");
  std::ofstream(dir / "in.jsonl") << R"({"id": "a"})" "\n";
  auto r = run_capture(kCli + " score --in " + shell_quote((dir / "in.jsonl").string()) + resources() +
                       " 2>/dev/null");
  CHECK(r.exit_code == 1);
  auto none = run_capture("env -u LEBKIT_CONCRETENESS -u LEBKIT_WORDNET " + kCli + " score --in " +
                          shell_quote((dir / "in.jsonl").string()) + " 2>/dev/null");
  CHECK(none.exit_code == 2);
}

TEST_CASE("probe --dry-run matches the golden prompt listings") {
  for (auto [cfg, golden] : {std::pair{"config.json", "golden_dryrun.txt"},
                             std::pair{"config_closed.json", "golden_dryrun_closed.txt"}}) {
    CAPTURE(cfg);
    auto r = run_capture(kCli + " probe --dry-run --config " + shell_quote((kE2E / cfg).string()));
    CHECK(r.exit_code == 0);
    CHECK(r.out == slurp_file(kE2E / golden));
  }
}

TEST_CASE("probe rejects invalid configs with exit code 2") {
  auto dir = fresh_dir("badcfg");
  auto j = nlohmann::json::parse(slurp_file(kE2E / "config.json"));
  j["corpus"] = (kE2E / "corpus.csv").string();
  j["tempreature"] = 0.5;
  std::ofstream(dir / "c.json") << j.dump();
  CHECK(run_capture(kCli + " probe --dry-run --config " + shell_quote((dir / "c.json").string()) +
                    " 2>/dev/null").exit_code == 2);
  j.erase("tempreature");
  j["random_k"] = 4;
  std::ofstream(dir / "c.json") << j.dump();
  CHECK(run_capture(kCli + " probe --dry-run --config " + shell_quote((dir / "c.json").string()) +
                    " 2>/dev/null").exit_code == 2);
  CHECK(run_capture(kCli + " probe --config " + shell_quote((dir / "missing.json").string()) +
                    " 2>/dev/null").exit_code != 0);
}

TEST_CASE("probe resumes from the store and sends the bearer token from the environment") {
  MockChatServer server((kE2E / "responses.jsonl").string());
  auto dir = fresh_dir("resume");
  auto store = dir / "store.jsonl";
  auto cfg = write_config(kE2E / "config.json", dir, server.url(), store.string(), "LEBKIT_TEST_TOKEN");

  // Named but unset variable: configuration error, nothing sent.
  auto unset = run_capture("env -u LEBKIT_TEST_TOKEN " + kCli + " probe --config " +
                           shell_quote(cfg.string()) + " 2>/dev/null");
  CHECK(unset.exit_code == 2);
  CHECK(server.requests() == 0);

  std::string env = "LEBKIT_TEST_TOKEN=sekret ";
  auto first = run_capture(env + kCli + " probe --limit 20 --config " + shell_quote(cfg.string()) +
                           " 2>/dev/null");
  REQUIRE(first.exit_code == 0);
  CHECK(load_records(store.string()).size() == 20);

  auto second = run_capture(env + kCli + " probe --config " + shell_quote(cfg.string()) + " 2>/dev/null");
  REQUIRE(second.exit_code == 0);
  auto records = load_records(store.string());
  CHECK(records.size() == 54);
  std::set<std::string> hashes;
  for (const auto& r : records) hashes.insert(r.hash);
  CHECK(hashes.size() == 54);

  auto before = server.requests();
  auto third = run_capture(env + kCli + " probe --config " + shell_quote(cfg.string()) + " 2>/dev/null");
  CHECK(third.exit_code == 0);
  CHECK(server.requests() == before);
  CHECK(server.unknown() == 0);

  auto auth = server.auth_headers();
  REQUIRE(!auth.empty());
  for (const auto& h : auth) CHECK(h == "Bearer sekret");
  CHECK(slurp_file(cfg).find("sekret") == std::string::npos);
}

TEST_CASE("closed tasks end to end") {
  MockChatServer server((kE2E / "responses.jsonl").string());
  auto dir = fresh_dir("closed");
  auto store = dir / "store.jsonl";
  auto cfg = write_config(kE2E / "config_closed.json", dir, server.url(), store.string());
  REQUIRE(run_capture(kCli + " probe --config " + shell_quote(cfg.string()) + " 2>/dev/null").exit_code == 0);
  CHECK(server.unknown() == 0);
  auto records = load_records(store.string());
  CHECK(records.size() == 108);

  auto r = run_capture(kCli + " analyze --format json --store " + shell_quote(store.string()) + " --out " +
                       shell_quote((dir / "out").string()) + resources());
  REQUIRE(r.exit_code == 0);
  auto report = report_from_json(slurp_file(dir / "out" / "report.json"));
  REQUIRE(report.closed.size() == 3 * 4);
  // Recorded replies rotate with k = (item + version) % 4. Category tasks:
  // "a <gold>", "a person", no blank, "the <gold>". Attribute task: gold at
  // k == 0, otherwise a wrong attribute. Items 0 and 1 share the category, so
  // their attribute prompts are identical and both get item 1's reply.
  for (const auto& c : report.closed) {
    CAPTURE(c.task);
    CAPTURE(c.prompt_version);
    std::size_t answered = 0, correct = 0;
    for (int item = 0; item < 9; ++item) {
      int k = (item + c.prompt_version) % 4;
      if (c.task == "ClosedAttribute") {
        ++answered;
        correct += item != 0 && k == 0;
      } else if (k != 2) {
        ++answered;
        correct += k == 0 || k == 3;
      }
    }
    CHECK(c.total == 9);
    CHECK(c.answered == answered);
    CHECK(c.correct == correct);
    REQUIRE(c.accuracy.has_value());
    CHECK(*c.accuracy == static_cast<double>(correct) / static_cast<double>(answered));
  }
}

TEST_CASE("analyze fails cleanly on a missing or empty store") {
  auto dir = fresh_dir("analyze_missing");
  auto r = run_capture(kCli + " analyze --store " + shell_quote((dir / "nope.jsonl").string()) + " --out " +
                       shell_quote((dir / "out").string()) + resources() + " 2>/dev/null");
  CHECK(r.exit_code == 1);
  std::ofstream(dir / "empty.jsonl");
  r = run_capture(kCli + " analyze --store " + shell_quote((dir / "empty.jsonl").string()) + " --out " +
                  shell_quote((dir / "out").string()) + resources() + " 2>/dev/null");
  CHECK(r.exit_code == 1);
  r = run_capture(kCli + " analyze --format yaml --store " + shell_quote((dir / "empty.jsonl").string()) +
                  " --out " + shell_quote((dir / "out").string()) + resources() + " 2>/dev/null");
  CHECK(r.exit_code == 2);
}
