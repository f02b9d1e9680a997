#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lebkit/analysis.hpp"
#include "lebkit/csv.hpp"

namespace lebkit {

namespace {

using ojson = nlohmann::ordered_json;

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::optional<double> opt_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ojson summary_json(const MetricSummary& m) {
  ojson j;
  j["mean"] = opt(m.mean);
  j["sd"] = opt(m.sd);
  j["n"] = m.n;
  return j;
}

MetricSummary summary_from(const nlohmann::json& j) {
  return {opt_from(j.at("mean")), opt_from(j.at("sd")), j.at("n").get<std::size_t>()};
}

ojson aggregate_json(const AggregateScore& a) {
  ojson j;
  j["key"] = a.key;
  j["n_texts"] = a.n_texts;
  j["concreteness"] = summary_json(a.concreteness);
  j["specificity"] = summary_json(a.specificity);
  j["negation_rate"] = summary_json(a.negation_rate);
  return j;
}

AggregateScore aggregate_from(const nlohmann::json& j) {
  AggregateScore a;
  a.key = j.at("key").get<std::string>();
  a.n_texts = j.at("n_texts").get<std::size_t>();
  a.concreteness = summary_from(j.at("concreteness"));
  a.specificity = summary_from(j.at("specificity"));
  a.negation_rate = summary_from(j.at("negation_rate"));
  return a;
}

std::string r2(const std::optional<double>& v) { return v ? round2(*v) : ""; }

std::string md_cell(const std::optional<double>& v) { return v ? round2(*v) : "-"; }

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

std::string safe_name(std::string_view s) {
  std::string out;
  for (char c : s) {
    bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                c == '-' || c == '.';
    out.push_back(keep ? c : '_');
  }
  return out;
}

const AggregateScore* find_aggregate(const ComparisonReport& r, const std::string& model,
                                     const std::string& group, const std::string& cond) {
  for (const auto& a : r.aggregates) {
    if (a.model == model && a.speaker_group == group && a.condition == cond) return &a.score;
  }
  return nullptr;
}

}  // namespace

std::string round2(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  std::string s(buf, res.ptr);
  bool negative = !s.empty() && s[0] == '-';
  if (negative) s.erase(0, 1);
  auto dot = s.find('.');
  std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
  while (fp.size() < 3) fp.push_back('0');
  std::string kept = ip + fp.substr(0, 2);
  std::string rest = fp.substr(2);
  bool up = false;
  if (rest[0] > '5') {
    up = true;
  } else if (rest[0] == '5') {
    bool beyond = rest.find_first_not_of('0', 1) != std::string::npos;
    up = beyond || ((kept.back() - '0') % 2 == 1);
  }
  if (up) {
    int i = static_cast<int>(kept.size()) - 1;
    while (i >= 0 && kept[i] == '9') kept[i--] = '0';
    if (i < 0) {
      kept.insert(kept.begin(), '1');
    } else {
      ++kept[i];
    }
  }
  std::string out = kept.substr(0, kept.size() - 2) + "." + kept.substr(kept.size() - 2);
  if (negative && out.find_first_not_of("0.") != std::string::npos) out.insert(out.begin(), '-');
  return out;
}

ReportFormat parse_report_format(std::string_view s) {
  std::string f = fold(s);
  if (f == "csv") return ReportFormat::Csv;
  if (f == "markdown" || f == "md") return ReportFormat::Markdown;
  if (f == "json") return ReportFormat::Json;
  throw Error("unknown report format: " + std::string(s));
}

std::string report_to_json(const ComparisonReport& r) {
  ojson j;
  j["aggregates"] = ojson::array();
  for (const auto& a : r.aggregates) {
    j["aggregates"].push_back({{"model", a.model},
                               {"speaker_group", a.speaker_group},
                               {"condition", a.condition},
                               {"score", aggregate_json(a.score)}});
  }
  j["human"] = r.human ? aggregate_json(*r.human) : ojson(nullptr);
  j["tests"] = ojson::array();
  for (const auto& t : r.tests) {
    j["tests"].push_back({{"model", t.model}, {"speaker_group", t.speaker_group},
                          {"metric", t.metric}, {"group_a", t.group_a}, {"group_b", t.group_b},
                          {"n_a", t.n_a}, {"n_b", t.n_b}, {"u", t.u}, {"p", t.p},
                          {"exact", t.exact}, {"significant", t.significant}});
  }
  j["deltas_vs_human"] = ojson::array();
  for (const auto& d : r.deltas) {
    j["deltas_vs_human"].push_back({{"model", d.model},
                                    {"concreteness", opt(d.concreteness)},
                                    {"specificity", opt(d.specificity)}});
  }
  j["persona_overlap"] = ojson::array();
  for (const auto& p : r.persona_overlap) {
    j["persona_overlap"].push_back({{"model", p.model}, {"condition", p.condition},
                                    {"persona", p.persona}, {"n_pairs", p.n_pairs},
                                    {"bleu", p.bleu}, {"rouge_l", p.rouge_l}});
  }
  j["matrices"] = ojson::array();
  for (const auto& m : r.matrices) {
    ojson values = ojson::array();
    for (const auto& row : m.values) {
      ojson jr = ojson::array();
      for (const auto& v : row) jr.push_back(opt(v));
      values.push_back(jr);
    }
    j["matrices"].push_back({{"model", m.model}, {"condition", m.condition},
                             {"measure", m.measure}, {"labels", m.labels}, {"values", values}});
  }
  j["closed_tasks"] = ojson::array();
  for (const auto& c : r.closed) {
    j["closed_tasks"].push_back({{"model", c.model}, {"task", c.task},
                                 {"prompt_version", c.prompt_version}, {"total", c.total},
                                 {"answered", c.answered}, {"correct", c.correct},
                                 {"skipped", c.skipped}, {"accuracy", opt(c.accuracy)}});
  }
  const auto& g = r.generation_records;
  j["generation_records"] = {{"ok", g.ok}, {"refusal", g.refusal}, {"json_error", g.json_error},
                             {"transport_error", g.transport_error}};
  j["notices"] = r.notices;
  return j.dump(2) + "\n";
}

ComparisonReport report_from_json(std::string_view text) {
  ComparisonReport r;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& a : j.at("aggregates")) {
      r.aggregates.push_back({a.at("model"), a.at("speaker_group"), a.at("condition"),
                              aggregate_from(a.at("score"))});
    }
    if (!j.at("human").is_null()) r.human = aggregate_from(j["human"]);
    for (const auto& t : j.at("tests")) {
      r.tests.push_back({t.at("model"), t.at("speaker_group"), t.at("metric"), t.at("group_a"),
                         t.at("group_b"), t.at("n_a"), t.at("n_b"), t.at("u"), t.at("p"),
                         t.at("exact"), t.at("significant")});
    }
    for (const auto& d : j.at("deltas_vs_human")) {
      r.deltas.push_back({d.at("model"), opt_from(d.at("concreteness")),
                          opt_from(d.at("specificity"))});
    }
    for (const auto& p : j.at("persona_overlap")) {
      r.persona_overlap.push_back({p.at("model"), p.at("condition"), p.at("persona"),
                                   p.at("n_pairs"), p.at("bleu"), p.at("rouge_l")});
    }
    for (const auto& m : j.at("matrices")) {
      OverlapMatrix om{m.at("model"), m.at("condition"), m.at("measure"),
                       m.at("labels").get<std::vector<std::string>>(), {}};
      for (const auto& row : m.at("values")) {
        std::vector<std::optional<double>> vr;
        for (const auto& v : row) vr.push_back(opt_from(v));
        om.values.push_back(std::move(vr));
      }
      r.matrices.push_back(std::move(om));
    }
    for (const auto& c : j.at("closed_tasks")) {
      r.closed.push_back({c.at("model"), c.at("task"), c.at("prompt_version"), c.at("total"),
                          c.at("answered"), c.at("correct"), c.at("skipped"),
                          opt_from(c.at("accuracy"))});
    }
    const auto& g = j.at("generation_records");
    r.generation_records = {g.at("ok"), g.at("refusal"), g.at("json_error"),
                            g.at("transport_error")};
    r.notices = j.at("notices").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw AnalysisError(std::string("bad report JSON: ") + e.what());
  }
  return r;
}

std::string matrix_csv(const OverlapMatrix& m) {
  std::vector<std::string> header{""};
  header.insert(header.end(), m.labels.begin(), m.labels.end());
  std::string out = csv_line(header);
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    std::vector<std::string> row{m.labels[i]};
    for (const auto& v : m.values[i]) row.push_back(r2(v));
    out += csv_line(row);
  }
  return out;
}

std::string report_markdown(const ComparisonReport& r) {
  std::ostringstream md;
  md << "# Abstraction report\n\n";
  md << "## Mean scores by condition\n\n";
  md << "| Model | Speaker | Conc. D | Conc. F | Conc. R | Spec. D | Spec. F | Spec. R | Neg. D | "
        "Neg. F | Neg. R |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  if (r.human) {
    md << "| Human | - | " << md_cell(r.human->concreteness.mean) << " | | | "
       << md_cell(r.human->specificity.mean) << " | | | " << md_cell(r.human->negation_rate.mean)
       << " | | |\n";
  }
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& a : r.aggregates) {
    std::pair<std::string, std::string> key{a.model, a.speaker_group};
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
  }
  for (const auto& [model, group] : rows) {
    md << "| " << model << " | " << group << " |";
    for (auto metric : {&AggregateScore::concreteness, &AggregateScore::specificity,
                        &AggregateScore::negation_rate}) {
      for (const char* cond : {"Default", "Flipped", "Random"}) {
        const auto* a = find_aggregate(r, model, group, cond);
        md << " " << (a ? md_cell((a->*metric).mean) : "-") << " |";
      }
    }
    md << "\n";
  }

  md << "\n## Aggregates\n\n";
  md << "| Model | Speaker | Condition | Texts | Conc. mean | Conc. SD | Spec. mean | Spec. SD | "
        "Neg. mean | Neg. SD |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|\n";
  auto agg_row = [&](const std::string& m, const std::string& g, const std::string& c,
                     const AggregateScore& a) {
    md << "| " << m << " | " << g << " | " << c << " | " << a.n_texts << " | "
       << md_cell(a.concreteness.mean) << " | " << md_cell(a.concreteness.sd) << " | "
       << md_cell(a.specificity.mean) << " | " << md_cell(a.specificity.sd) << " | "
       << md_cell(a.negation_rate.mean) << " | " << md_cell(a.negation_rate.sd) << " |\n";
  };
  if (r.human) agg_row("Human", "-", "-", *r.human);
  for (const auto& a : r.aggregates) agg_row(a.model, a.speaker_group, a.condition, a.score);

  md << "\n## Condition tests (Mann-Whitney U, two-sided)\n\n";
  md << "| Model | Speaker | Metric | A | B | n A | n B | U | p | Sig. |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& t : r.tests) {
    md << "| " << t.model << " | " << t.speaker_group << " | " << t.metric << " | " << t.group_a
       << " | " << t.group_b << " | " << t.n_a << " | " << t.n_b << " | " << round2(t.u) << " | "
       << round2(t.p) << (t.exact ? " (exact)" : "") << " | " << (t.significant ? "yes" : "no")
       << " |\n";
  }

  if (!r.deltas.empty()) {
    md << "\n## Difference from the human baseline (AIAssistant, Default)\n\n";
    md << "| Model | Delta concreteness | Delta specificity |\n|---|---|---|\n";
    for (const auto& d : r.deltas) {
      md << "| " << d.model << " | " << md_cell(d.concreteness) << " | "
         << md_cell(d.specificity) << " |\n";
    }
  }

  if (!r.persona_overlap.empty()) {
    md << "\n## Persona vs AI assistant overlap\n\n";
    md << "| Model | Condition | Persona | Pairs | BLEU | ROUGE-L |\n|---|---|---|---|---|---|\n";
    for (const auto& p : r.persona_overlap) {
      md << "| " << p.model << " | " << p.condition << " | " << p.persona << " | " << p.n_pairs
         << " | " << round2(p.bleu) << " | " << round2(p.rouge_l) << " |\n";
    }
  }

  if (!r.closed.empty()) {
    md << "\n## Closed tasks\n\n";
    md << "| Model | Task | Version | Total | Answered | Correct | Skipped | Accuracy |\n";
    md << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& c : r.closed) {
      md << "| " << c.model << " | " << c.task << " | v" << c.prompt_version << " | " << c.total
         << " | " << c.answered << " | " << c.correct << " | " << c.skipped << " | "
         << md_cell(c.accuracy) << " |\n";
    }
  }

  const auto& g = r.generation_records;
  md << "\n## Generation records\n\n";
  md << "| Ok | Refusal | JSON error | Transport error |\n|---|---|---|---|\n";
  md << "| " << g.ok << " | " << g.refusal << " | " << g.json_error << " | " << g.transport_error
     << " |\n";

  if (!r.notices.empty()) {
    md << "\n## Notices\n\n";
    for (const auto& n : r.notices) md << "- " << n << "\n";
  }
  return md.str();
}

std::vector<std::string> emit_report(const ComparisonReport& r, ReportFormat fmt,
                                     const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw Error("cannot create output directory: " + out_dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& content) {
    auto path = (fs::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
    written.push_back(path);
  };

  if (fmt == ReportFormat::Json) {
    write("report.json", report_to_json(r));
  } else if (fmt == ReportFormat::Markdown) {
    write("report.md", report_markdown(r));
  } else {
    std::string agg = csv_line({"model", "speaker_group", "condition", "n_texts",
                                "concreteness_mean", "concreteness_sd", "concreteness_n",
                                "specificity_mean", "specificity_sd", "specificity_n",
                                "negation_rate_mean", "negation_rate_sd", "negation_rate_n"});
    auto agg_line = [&](const std::string& m, const std::string& g, const std::string& c,
                        const AggregateScore& a) {
      agg += csv_line({m, g, c, std::to_string(a.n_texts), r2(a.concreteness.mean),
                       r2(a.concreteness.sd), std::to_string(a.concreteness.n),
                       r2(a.specificity.mean), r2(a.specificity.sd),
                       std::to_string(a.specificity.n), r2(a.negation_rate.mean),
                       r2(a.negation_rate.sd), std::to_string(a.negation_rate.n)});
    };
    if (r.human) agg_line("human", "", "", *r.human);
    for (const auto& a : r.aggregates) agg_line(a.model, a.speaker_group, a.condition, a.score);
    write("aggregates.csv", agg);

    std::string tests = csv_line({"model", "speaker_group", "metric", "group_a", "group_b", "n_a",
                                  "n_b", "u", "p", "exact", "significant"});
    for (const auto& t : r.tests) {
      tests += csv_line({t.model, t.speaker_group, t.metric, t.group_a, t.group_b,
                         std::to_string(t.n_a), std::to_string(t.n_b), round2(t.u), round2(t.p),
                         t.exact ? "true" : "false", t.significant ? "true" : "false"});
    }
    write("tests.csv", tests);

    std::string deltas = csv_line({"model", "delta_concreteness", "delta_specificity"});
    for (const auto& d : r.deltas) deltas += csv_line({d.model, r2(d.concreteness), r2(d.specificity)});
    write("deltas.csv", deltas);

    std::string po = csv_line({"model", "condition", "persona", "n_pairs", "bleu", "rouge_l"});
    for (const auto& p : r.persona_overlap) {
      po += csv_line({p.model, p.condition, p.persona, std::to_string(p.n_pairs), round2(p.bleu),
                      round2(p.rouge_l)});
    }
    write("persona_overlap.csv", po);

    std::string ct = csv_line({"model", "task", "prompt_version", "total", "answered", "correct",
                               "skipped", "accuracy"});
    for (const auto& c : r.closed) {
      ct += csv_line({c.model, c.task, std::to_string(c.prompt_version), std::to_string(c.total),
                      std::to_string(c.answered), std::to_string(c.correct),
                      std::to_string(c.skipped), r2(c.accuracy)});
    }
    write("closed_tasks.csv", ct);

    const auto& g = r.generation_records;
    write("records.csv", csv_line({"ok", "refusal", "json_error", "transport_error"}) +
                             csv_line({std::to_string(g.ok), std::to_string(g.refusal),
                                       std::to_string(g.json_error),
                                       std::to_string(g.transport_error)}));
    std::string notices;
    for (const auto& n : r.notices) notices += n + "\n";
    write("notices.txt", notices);
  }
  for (const auto& m : r.matrices) {
    write("overlap_" + safe_name(m.model) + "_" + m.condition + "_" + safe_name(m.measure) + ".csv",
          matrix_csv(m));
  }
  return written;
}

}  // namespace lebkit
