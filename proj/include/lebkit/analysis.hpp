#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lebkit/experiment.hpp"
#include "lebkit/metrics.hpp"
#include "lebkit/stats.hpp"

namespace lebkit {

class AnalysisError : public Error {
 public:
  using Error::Error;
};

// Condition column of the report: Random slots are pooled.
std::string condition_column(const Condition& c);  // "Default" | "Flipped" | "Random"

struct GroupAggregate {
  std::string model;
  std::string speaker_group;  // AIAssistant | PoliticalPersonas | AgePersonas
  std::string condition;
  AggregateScore score;
  bool operator==(const GroupAggregate&) const = default;
};

struct ConditionTest {
  std::string model;
  std::string speaker_group;
  std::string metric;  // concreteness | specificity | negation_rate
  std::string group_a;
  std::string group_b;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double u = 0.0;
  double p = 1.0;
  bool exact = false;
  bool significant = false;  // p < 0.05
  bool operator==(const ConditionTest&) const = default;
};

struct HumanDelta {
  std::string model;
  std::optional<double> concreteness;  // assistant Default mean - human mean
  std::optional<double> specificity;
  bool operator==(const HumanDelta&) const = default;
};

struct PersonaOverlap {
  std::string model;
  std::string condition;
  std::string persona;
  std::size_t n_pairs = 0;
  double bleu = 0.0;
  double rouge_l = 0.0;
  bool operator==(const PersonaOverlap&) const = default;
};

struct OverlapMatrix {
  std::string model;
  std::string condition;
  std::string measure;  // "BLEU" (row = candidate) | "ROUGE-L"
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<double>>> values;  // absent: no shared specs
  bool operator==(const OverlapMatrix&) const = default;
};

struct ClosedTaskResult {
  std::string model;
  std::string task;
  int prompt_version = 0;
  std::size_t total = 0;
  std::size_t answered = 0;
  std::size_t correct = 0;
  std::size_t skipped = 0;
  std::optional<double> accuracy;  // correct / answered
  bool operator==(const ClosedTaskResult&) const = default;
};

struct ExclusionCounts {
  std::size_t ok = 0;
  std::size_t refusal = 0;
  std::size_t json_error = 0;
  std::size_t transport_error = 0;
  bool operator==(const ExclusionCounts&) const = default;
};

struct ComparisonReport {
  std::vector<GroupAggregate> aggregates;
  std::optional<AggregateScore> human;
  std::vector<ConditionTest> tests;
  std::vector<HumanDelta> deltas;
  std::vector<PersonaOverlap> persona_overlap;
  std::vector<OverlapMatrix> matrices;
  std::vector<ClosedTaskResult> closed;
  ExclusionCounts generation_records;
  std::vector<std::string> notices;
  bool operator==(const ComparisonReport&) const = default;
};

// Only generation records with status Ok enter scoring. Aggregates per
// (model, speaker group, condition); Mann-Whitney per metric for every
// condition pair within (model, speaker group). Throws AnalysisError when no
// generation record is usable.
ComparisonReport compare_conditions(const std::vector<ProbeRecord>& records,
                                    const Resources& res,
                                    const std::optional<AggregateScore>& human = std::nullopt,
                                    unsigned threads = 0);

struct PersonaComparison {
  std::vector<PersonaOverlap> vs_assistant;
  std::vector<OverlapMatrix> matrices;
};

// Texts are paired on the same item and condition (including the sampled
// Random attribute). Throws AnalysisError when no two speakers share a spec.
PersonaComparison compare_personas(const std::vector<ProbeRecord>& records);

std::vector<ClosedTaskResult> closed_task_report(const std::vector<ProbeRecord>& records);

// compare_conditions + compare_personas + closed_task_report; missing parts
// become notices instead of errors.
ComparisonReport build_report(const std::vector<ProbeRecord>& records,
                              const Resources& res,
                              const std::optional<AggregateScore>& human,
                              unsigned threads = 0);

// Human baseline: a JSON object {"concreteness": {"mean", "sd", "n"}, ...}
// taken as-is, or a JSON-lines file of {"id", "text"} scored with `res`.
AggregateScore load_human_baseline(const std::string& path, const Resources& res);

enum class ReportFormat { Csv, Markdown, Json };
ReportFormat parse_report_format(std::string_view s);

// Two decimals, ties to even on the shortest decimal form of the value.
std::string round2(double v);

std::string report_to_json(const ComparisonReport& r);
ComparisonReport report_from_json(std::string_view json);
std::string report_markdown(const ComparisonReport& r);
std::string matrix_csv(const OverlapMatrix& m);

// Writes the report files into `out_dir` (created if needed) and returns
// their paths in write order.
std::vector<std::string> emit_report(const ComparisonReport& r, ReportFormat fmt,
                                     const std::string& out_dir);

}  // namespace lebkit
