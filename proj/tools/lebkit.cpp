#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"
#include "lebkit/analysis.hpp"
#include "lebkit/csv.hpp"
#include "lebkit/experiment.hpp"
#include "lebkit/lexicons.hpp"
#include "lebkit/metrics.hpp"

using namespace lebkit;

namespace {

struct ResourceArgs {
  std::vector<std::string> lexicons;
  std::string wordnet;

  void add_to(CLI::App* app) {
    app->add_option("--lexicon", lexicons,
                    "Concreteness norms file (repeatable; default $LEBKIT_CONCRETENESS)");
    app->add_option("--wordnet", wordnet, "WordNet dict directory (default $LEBKIT_WORDNET)");
  }

  void resolve_defaults() {
    if (lexicons.empty()) {
      if (const char* env = std::getenv("LEBKIT_CONCRETENESS")) {
        for (auto& p : split(env, ':')) {
          if (!p.empty()) lexicons.push_back(p);
        }
      }
    }
    if (wordnet.empty()) {
      if (const char* env = std::getenv("LEBKIT_WORDNET")) wordnet = env;
    }
    if (lexicons.empty()) throw CLI::ValidationError("--lexicon", "no concreteness norms given");
    if (wordnet.empty()) throw CLI::ValidationError("--wordnet", "no WordNet directory given");
  }
};

struct Loaded {
  ConcretenessLexicon lex;
  WordNetStore wn;
  Resources res() const { return Resources{&lex, &wn, NegationCues()}; }
};

std::unique_ptr<Loaded> load_resources(ResourceArgs& args) {
  args.resolve_defaults();
  auto l = std::make_unique<Loaded>();
  l->lex = load_concreteness(args.lexicons);
  for (const auto& w : l->lex.warnings()) std::cerr << "warning: " << w << "\n";
  l->wn = load_wordnet(args.wordnet);
  return l;
}

nlohmann::ordered_json score_json(const std::string& id, const TextScore& s) {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["id"] = id;
  j["concreteness"] = opt(s.concreteness);
  j["specificity"] = opt(s.specificity);
  j["negation_rate"] = s.negation_rate;
  j["n_tokens"] = s.n_tokens;
  j["coverage_concreteness"] = opt(s.coverage_concreteness);
  j["coverage_spec_noun"] = opt(s.coverage_spec_noun);
  j["coverage_spec_adj"] = opt(s.coverage_spec_adj);
  return j;
}

std::string cell(const std::optional<double>& v) { return v ? round2(*v) : ""; }

int run_score(ResourceArgs& rargs, const std::string& in, const std::string& out,
              const std::string& agg_path, unsigned threads) {
  auto loaded = load_resources(rargs);
  std::ifstream input(in, std::ios::binary);
  if (!input) throw Error("cannot open " + in);
  std::vector<std::string> ids, texts, groups;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      const auto& id = j.at("id");
      ids.push_back(id.is_string() ? id.get<std::string>() : id.dump());
      texts.push_back(j.at("text").get<std::string>());
      groups.push_back(j.contains("group") ? j["group"].get<std::string>() : "all");
    } catch (const nlohmann::json::exception& e) {
      throw Error(in + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  auto scores = score_many(texts, loaded->res(), threads);

  std::ofstream os;
  std::ostream* sink = &std::cout;
  if (!out.empty() && out != "-") {
    os.open(out, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write " + out);
    sink = &os;
  }
  for (std::size_t i = 0; i < scores.size(); ++i) *sink << score_json(ids[i], scores[i]).dump() << "\n";

  if (!agg_path.empty()) {
    std::map<std::string, std::vector<TextScore>> by_group;
    for (std::size_t i = 0; i < scores.size(); ++i) by_group[groups[i]].push_back(scores[i]);
    std::ofstream agg(agg_path, std::ios::binary | std::ios::trunc);
    if (!agg) throw Error("cannot write " + agg_path);
    agg << "group,n_texts,concreteness_mean,concreteness_sd,specificity_mean,specificity_sd,"
           "negation_rate_mean,negation_rate_sd\n";
    for (const auto& [g, s] : by_group) {
      auto a = aggregate(s, g);
      agg << csv_escape(g) << "," << a.n_texts << "," << cell(a.concreteness.mean) << ","
          << cell(a.concreteness.sd) << "," << cell(a.specificity.mean) << ","
          << cell(a.specificity.sd) << "," << cell(a.negation_rate.mean) << ","
          << cell(a.negation_rate.sd) << "\n";
    }
  }
  return 0;
}

int run_probe(const std::string& config_path, bool dry, const std::string& out_override,
              std::size_t limit) {
  auto cfg = load_config(config_path);
  if (!out_override.empty()) cfg.out = out_override;
  auto corpus = load_corpus(cfg.corpus);
  for (const auto& w : corpus.warnings()) std::cerr << "warning: " << w << "\n";
  if (dry) {
    std::cout << dry_run(cfg, corpus);
    return 0;
  }
  ResponseStore store(cfg.out);
  HttpTransport transport;
  RunOptions opt;
  opt.limit = limit;
  auto stats = run_experiment(cfg, corpus, store, transport, opt);
  std::cerr << "planned " << stats.planned << ", skipped " << stats.skipped << ", executed "
            << stats.executed << " (ok " << stats.ok << ", refusal " << stats.refusal
            << ", json error " << stats.json_error << ", transport error "
            << stats.transport_error << ")\n";
  return 0;
}

int run_analyze(ResourceArgs& rargs, const std::string& store_path, const std::string& human_path,
                const std::string& out_dir, const std::string& format, unsigned threads) {
  auto fmt = parse_report_format(format);
  auto loaded = load_resources(rargs);
  auto records = load_records(store_path);
  std::optional<AggregateScore> human;
  if (!human_path.empty()) human = load_human_baseline(human_path, loaded->res());
  auto report = build_report(records, loaded->res(), human, threads);
  for (const auto& path : emit_report(report, fmt, out_dir)) std::cout << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linguistic abstraction metrics and LLM probing toolkit"};
  app.require_subcommand(1);

  auto* score = app.add_subcommand("score", "Score JSON-lines texts {id, text[, group]}");
  ResourceArgs score_res;
  score_res.add_to(score);
  std::string score_in, score_out = "-", score_agg;
  unsigned threads = 0;
  score->add_option("--in", score_in, "Input JSON-lines")->required();
  score->add_option("--out", score_out, "Output JSON-lines ('-' for stdout)");
  score->add_option("--aggregate", score_agg, "Write per-group aggregate CSV here");
  score->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* probe = app.add_subcommand("probe", "Run the prompt cross-product against endpoints");
  std::string config, probe_out;
  bool dry = false;
  std::size_t limit = 0;
  probe->add_option("--config", config, "Experiment config (JSON)")->required();
  probe->add_flag("--dry-run", dry, "Print prompts without network calls");
  probe->add_option("--out", probe_out, "Override the store path");
  probe->add_option("--limit", limit, "Stop after this many new records");

  auto* analyze = app.add_subcommand("analyze", "Build comparison report from a response store");
  ResourceArgs an_res;
  an_res.add_to(analyze);
  std::string store_path, human_path, out_dir, format = "markdown";
  analyze->add_option("--store", store_path, "Response store (JSON-lines)")->required();
  analyze->add_option("--human-baseline", human_path,
                      "Human baseline: JSON summary or JSON-lines texts");
  analyze->add_option("--out", out_dir, "Output directory")->required();
  analyze->add_option("--format", format, "csv | markdown | json")
      ->check(CLI::IsMember({"csv", "markdown", "json"}));
  analyze->add_option("--threads", threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*score) return run_score(score_res, score_in, score_out, score_agg, threads);
    if (*probe) return run_probe(config, dry, probe_out, limit);
    if (*analyze) return run_analyze(an_res, store_path, human_path, out_dir, format, threads);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
