#include "lebkit/analysis.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "lebkit/overlap.hpp"

namespace lebkit {

namespace {

const std::array<std::string_view, 3> kConditionOrder = {"Default", "Flipped", "Random"};
const std::array<std::string_view, 3> kGroupOrder = {"AIAssistant", "PoliticalPersonas",
                                                     "AgePersonas"};
const std::array<std::string_view, 3> kMetrics = {"concreteness", "specificity",
                                                  "negation_rate"};

int rank_of(std::string_view v, const std::array<std::string_view, 3>& order) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == v) return static_cast<int>(i);
  }
  return static_cast<int>(order.size());
}

int speaker_rank(const std::string& label) {
  if (label == "AIAssistant") return 0;
  const auto& all = all_personas();
  auto it = std::find(all.begin(), all.end(), label);
  return 1 + static_cast<int>(it - all.begin());
}

// Records in spec-hash order, first occurrence of each hash only.
std::vector<const ProbeRecord*> canonical(const std::vector<ProbeRecord>& records) {
  std::vector<const ProbeRecord*> out;
  for (const auto& r : records) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(),
                   [](const ProbeRecord* a, const ProbeRecord* b) { return a->hash < b->hash; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const ProbeRecord* a, const ProbeRecord* b) { return a->hash == b->hash; }),
            out.end());
  return out;
}

std::optional<double> metric_of(const TextScore& s, std::string_view metric) {
  if (metric == "concreteness") return s.concreteness;
  if (metric == "specificity") return s.specificity;
  return s.negation_rate;
}

using GroupKey = std::tuple<std::string, int, int>;  // model, group rank, condition rank

}  // namespace

std::string condition_column(const Condition& c) { return std::string(to_string(c.kind)); }

ComparisonReport compare_conditions(const std::vector<ProbeRecord>& records,
                                    const Resources& res,
                                    const std::optional<AggregateScore>& human,
                                    unsigned threads) {
  ComparisonReport rep;
  rep.human = human;
  std::vector<const ProbeRecord*> usable;
  for (const auto* r : canonical(records)) {
    if (r->spec.task != Task::Generation) continue;
    switch (r->status) {
      case ProbeStatus::Ok: ++rep.generation_records.ok; break;
      case ProbeStatus::Refusal: ++rep.generation_records.refusal; break;
      case ProbeStatus::JsonError: ++rep.generation_records.json_error; break;
      case ProbeStatus::TransportError: ++rep.generation_records.transport_error; break;
    }
    if (r->status == ProbeStatus::Ok && r->extracted) usable.push_back(r);
  }
  if (usable.empty()) throw AnalysisError("no usable generation records in the store");

  std::vector<std::string> texts;
  texts.reserve(usable.size());
  for (const auto* r : usable) texts.push_back(*r->extracted);
  auto scores = score_many(texts, res, threads);

  std::map<GroupKey, std::vector<TextScore>> groups;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    const auto& spec = usable[i]->spec;
    groups[{usable[i]->model_id, rank_of(spec.speaker.group(), kGroupOrder),
            rank_of(condition_column(spec.condition), kConditionOrder)}]
        .push_back(scores[i]);
  }

  for (const auto& [key, group_scores] : groups) {
    const auto& [model, g, c] = key;
    std::string group(kGroupOrder[g]);
    std::string cond(kConditionOrder[c]);
    rep.aggregates.push_back(
        {model, group, cond, aggregate(group_scores, model + "|" + group + "|" + cond)});
  }

  std::map<std::pair<std::string, int>, std::vector<int>> conditions_by_group;
  for (const auto& [key, _] : groups) {
    conditions_by_group[{std::get<0>(key), std::get<1>(key)}].push_back(std::get<2>(key));
  }
  for (const auto& [mg, conds] : conditions_by_group) {
    const auto& [model, g] = mg;
    std::string group(kGroupOrder[g]);
    if (conds.size() < 2) {
      rep.notices.push_back(model + " / " + group +
                            ": only one condition present, no condition tests");
      continue;
    }
    for (std::size_t i = 0; i < conds.size(); ++i) {
      for (std::size_t j = i + 1; j < conds.size(); ++j) {
        const auto& sa = groups.at({model, g, conds[i]});
        const auto& sb = groups.at({model, g, conds[j]});
        for (auto metric : kMetrics) {
          std::vector<double> a, b;
          for (const auto& s : sa) {
            if (auto v = metric_of(s, metric)) a.push_back(*v);
          }
          for (const auto& s : sb) {
            if (auto v = metric_of(s, metric)) b.push_back(*v);
          }
          std::string name_a(kConditionOrder[conds[i]]);
          std::string name_b(kConditionOrder[conds[j]]);
          if (a.empty() || b.empty()) {
            rep.notices.push_back(model + " / " + group + " / " + std::string(metric) + ": " +
                                  name_a + " vs " + name_b + " skipped, empty sample");
            continue;
          }
          auto mw = mann_whitney_u(a, b);
          rep.tests.push_back({model, group, std::string(metric), name_a, name_b, a.size(),
                               b.size(), mw.u, mw.p, mw.exact, mw.p < 0.05});
        }
      }
    }
  }

  if (human) {
    std::set<std::string> models;
    for (const auto& a : rep.aggregates) models.insert(a.model);
    for (const auto& m : models) {
      HumanDelta d{m, std::nullopt, std::nullopt};
      for (const auto& a : rep.aggregates) {
        if (a.model != m || a.speaker_group != "AIAssistant" || a.condition != "Default") continue;
        if (a.score.concreteness.mean && human->concreteness.mean) {
          d.concreteness = *a.score.concreteness.mean - *human->concreteness.mean;
        }
        if (a.score.specificity.mean && human->specificity.mean) {
          d.specificity = *a.score.specificity.mean - *human->specificity.mean;
        }
      }
      if (!d.concreteness && !d.specificity) {
        rep.notices.push_back(m + ": no AIAssistant Default scores, no delta vs human");
      }
      rep.deltas.push_back(d);
    }
  }
  return rep;
}

PersonaComparison compare_personas(const std::vector<ProbeRecord>& records) {
  // (model, condition column) -> spec identity -> speaker rank -> tokens
  using SpecKey = std::tuple<std::string, std::string, std::string, std::string, std::string>;
  using Texts = std::map<int, std::vector<std::string>>;
  std::map<std::pair<std::string, int>, std::map<SpecKey, Texts>> cells;
  for (const auto* r : canonical(records)) {
    if (r->spec.task != Task::Generation || r->status != ProbeStatus::Ok || !r->extracted) continue;
    auto toks = overlap_tokens(*r->extracted);
    if (toks.empty()) continue;
    const auto& s = r->spec;
    SpecKey key{s.condition.key(), s.condition.attribute, s.item.category, s.item.attribute,
                std::string(to_string(s.item.stereo_class))};
    cells[{r->model_id, rank_of(condition_column(s.condition), kConditionOrder)}][key]
         [speaker_rank(s.speaker.label())] = std::move(toks);
  }

  auto label_of = [](int rank) {
    return rank == 0 ? std::string("AIAssistant") : all_personas()[rank - 1];
  };

  PersonaComparison out;
  bool shared = false;
  for (const auto& [cell, specs] : cells) {
    const auto& [model, c] = cell;
    std::string cond(kConditionOrder[c]);
    std::set<int> present;
    for (const auto& [_, texts] : specs) {
      for (const auto& [rank, __] : texts) present.insert(rank);
      if (texts.size() >= 2) shared = true;
    }
    std::vector<int> ranks(present.begin(), present.end());
    const std::size_t n = ranks.size();
    std::vector<std::vector<double>> bsum(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> rsum(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<std::size_t>> cnt(n, std::vector<std::size_t>(n, 0));
    for (const auto& [_, texts] : specs) {
      for (std::size_t i = 0; i < n; ++i) {
        auto ti = texts.find(ranks[i]);
        if (ti == texts.end()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          auto tj = texts.find(ranks[j]);
          if (tj == texts.end()) continue;
          bsum[i][j] += bleu(ti->second, tj->second);
          rsum[i][j] += rouge_l(ti->second, tj->second);
          ++cnt[i][j];
        }
      }
    }
    OverlapMatrix mb{model, cond, "BLEU", {}, {}};
    OverlapMatrix mr{model, cond, "ROUGE-L", {}, {}};
    for (int rank : ranks) {
      mb.labels.push_back(label_of(rank));
      mr.labels.push_back(label_of(rank));
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::optional<double>> rowb, rowr;
      for (std::size_t j = 0; j < n; ++j) {
        if (cnt[i][j] == 0) {
          rowb.emplace_back();
          rowr.emplace_back();
        } else {
          rowb.emplace_back(bsum[i][j] / static_cast<double>(cnt[i][j]));
          rowr.emplace_back(rsum[i][j] / static_cast<double>(cnt[i][j]));
        }
      }
      mb.values.push_back(std::move(rowb));
      mr.values.push_back(std::move(rowr));
    }
    if (!ranks.empty() && ranks[0] == 0) {
      for (std::size_t i = 1; i < n; ++i) {
        if (cnt[i][0] == 0) continue;
        out.vs_assistant.push_back({model, cond, label_of(ranks[i]), cnt[i][0],
                                    bsum[i][0] / static_cast<double>(cnt[i][0]),
                                    rsum[i][0] / static_cast<double>(cnt[i][0])});
      }
    }
    out.matrices.push_back(std::move(mb));
    out.matrices.push_back(std::move(mr));
  }
  if (!shared) throw AnalysisError("no spec was answered by two or more speakers");
  return out;
}

std::vector<ClosedTaskResult> closed_task_report(const std::vector<ProbeRecord>& records) {
  std::map<std::tuple<std::string, int, int>, ClosedTaskResult> cells;
  for (const auto* r : canonical(records)) {
    if (!is_closed(r->spec.task)) continue;
    auto& c = cells[{r->model_id, static_cast<int>(r->spec.task), r->spec.prompt_version}];
    c.model = r->model_id;
    c.task = std::string(to_string(r->spec.task));
    c.prompt_version = r->spec.prompt_version;
    ++c.total;
    if (r->status == ProbeStatus::Ok && r->extracted) {
      ++c.answered;
      if (token_accuracy(*r->extracted, closed_gold(r->spec))) ++c.correct;
    } else {
      ++c.skipped;
    }
  }
  std::vector<ClosedTaskResult> out;
  for (auto& [_, c] : cells) {
    if (c.answered) c.accuracy = static_cast<double>(c.correct) / static_cast<double>(c.answered);
    out.push_back(c);
  }
  return out;
}

ComparisonReport build_report(const std::vector<ProbeRecord>& records, const Resources& res,
                              const std::optional<AggregateScore>& human, unsigned threads) {
  if (records.empty()) throw AnalysisError("the store is empty");
  ComparisonReport rep;
  try {
    rep = compare_conditions(records, res, human, threads);
  } catch (const AnalysisError& e) {
    rep.human = human;
    rep.notices.push_back(std::string("condition comparison skipped: ") + e.what());
  }
  try {
    auto pc = compare_personas(records);
    rep.persona_overlap = std::move(pc.vs_assistant);
    rep.matrices = std::move(pc.matrices);
  } catch (const AnalysisError& e) {
    rep.notices.push_back(std::string("persona comparison skipped: ") + e.what());
  }
  rep.closed = closed_task_report(records);
  return rep;
}

AggregateScore load_human_baseline(const std::string& path, const Resources& res) {
  std::string content = read_file(path);
  nlohmann::json whole = nlohmann::json::parse(content, nullptr, false);
  auto summary_of = [](const nlohmann::json& j) {
    MetricSummary m;
    if (j.is_number()) {
      m.mean = j.get<double>();
      return m;
    }
    if (j.contains("mean") && !j["mean"].is_null()) m.mean = j["mean"].get<double>();
    if (j.contains("sd") && !j["sd"].is_null()) m.sd = j["sd"].get<double>();
    m.n = j.value("n", std::size_t{0});
    return m;
  };
  try {
    if (!whole.is_discarded() && whole.is_object() && whole.contains("concreteness")) {
      AggregateScore a;
      a.key = "human";
      a.n_texts = whole.value("n_texts", std::size_t{0});
      a.concreteness = summary_of(whole["concreteness"]);
      if (whole.contains("specificity")) a.specificity = summary_of(whole["specificity"]);
      if (whole.contains("negation_rate")) a.negation_rate = summary_of(whole["negation_rate"]);
      return a;
    }
    std::vector<std::string> texts;
    std::size_t line_no = 0;
    for (const auto& line : split(content, '\n')) {
      ++line_no;
      if (trim(line).empty()) continue;
      auto j = nlohmann::json::parse(line);
      texts.push_back(j.at("text").get<std::string>());
    }
    if (texts.empty()) throw AnalysisError("human baseline has no texts: " + path);
    return aggregate(score_many(texts, res), "human");
  } catch (const nlohmann::json::exception& e) {
    throw AnalysisError("bad human baseline " + path + ": " + e.what());
  }
}

}  // namespace lebkit
