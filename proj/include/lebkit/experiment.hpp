#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lebkit/client.hpp"
#include "lebkit/corpus.hpp"
#include "lebkit/extract.hpp"
#include "lebkit/prompts.hpp"

namespace lebkit {

enum class ProbeStatus { Ok, Refusal, JsonError, TransportError };

std::string_view to_string(ProbeStatus s);
ProbeStatus parse_probe_status(std::string_view s);

// FNV-1a 64 over the identifying fields of (spec, model), as 16 hex digits.
std::string spec_hash(const ProbeSpec& spec, const std::string& model);

struct ProbeRecord {
  ProbeSpec spec;
  std::string model_id;
  std::string raw;
  std::optional<std::string> extracted;
  ProbeStatus status = ProbeStatus::Ok;
  std::optional<JsonErrorKind> json_error;
  std::string error;
  double seconds = 0.0;
  int attempts = 0;
  std::string hash;

  bool operator==(const ProbeRecord&) const = default;
};

std::string serialize_record(const ProbeRecord& r);  // one JSON line, no '\n'
ProbeRecord parse_record(std::string_view line);

// Builds the record for a finished query: extraction, refusal check, status.
ProbeRecord classify_response(const ProbeSpec& spec, const std::string& model,
                              const QueryResult& result,
                              const RefusalDetector& refusal);

class StoreError : public Error {
 public:
  using Error::Error;
};

// Append-only JSON-lines store keyed by spec hash. A truncated final line
// (interrupted write) is dropped on open and overwritten by the next append.
class ResponseStore {
 public:
  explicit ResponseStore(std::string path);

  bool contains(const std::string& hash) const;
  // Returns false (and writes nothing) when the hash is already present.
  bool append(const ProbeRecord& r);
  std::size_t size() const;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::set<std::string> hashes_;
  std::size_t valid_bytes_ = 0;
};

// All complete records of a store file, in file order.
std::vector<ProbeRecord> load_records(const std::string& path);

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct EndpointConfig {
  std::string url;
  std::string auth_env_var;  // empty: no Authorization header
  std::string model;
  int max_in_flight = 4;
  double rate = 0.0;  // requests per second, 0 = unlimited
};

struct ExperimentConfig {
  std::string corpus;
  std::vector<EndpointConfig> endpoints;
  std::vector<Speaker> speakers;
  std::vector<ConditionKind> conditions;
  std::uint64_t seed = 0;
  std::size_t random_k = 3;
  std::string out;
  std::vector<Task> tasks{Task::Generation};
  std::vector<int> prompt_versions{1, 2, 3, 4};
  std::vector<std::string> refusal_phrases;  // empty: defaults
  bool fix_article = false;
  RetryPolicy retry;
  QueryParams params;
};

// Relative corpus/out paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::string_view json, const std::string& base_dir = "");
ExperimentConfig load_config(const std::string& path);

struct PlannedProbe {
  ProbeSpec spec;
  std::size_t endpoint = 0;
  std::string hash;
};

// Generation: items x conditions (Random expanded to random_k slots) x
// speakers x endpoints. Closed tasks: items x versions x endpoints, assistant
// speaker only. Order is deterministic.
std::vector<PlannedProbe> plan_experiment(const ExperimentConfig& cfg,
                                          const Corpus& corpus);

// Random-condition attributes for one category under the run seed.
std::vector<std::string> random_attributes_for(const Corpus& corpus,
                                               const std::string& category,
                                               std::size_t k, std::uint64_t seed);

// Prompts of the whole plan, without network access.
std::string dry_run(const ExperimentConfig& cfg, const Corpus& corpus);

struct RunStats {
  std::size_t planned = 0;
  std::size_t skipped = 0;  // already in the store
  std::size_t executed = 0;
  std::size_t ok = 0;
  std::size_t refusal = 0;
  std::size_t json_error = 0;
  std::size_t transport_error = 0;
};

struct RunOptions {
  // Stop after this many new records (0: no limit).
  std::size_t limit = 0;
  ChatClient::Sleeper sleeper;
  std::function<void(const ProbeRecord&)> on_record;
};

RunStats run_experiment(const ExperimentConfig& cfg, const Corpus& corpus,
                        ResponseStore& store, Transport& transport,
                        const RunOptions& opt = {});

}  // namespace lebkit
