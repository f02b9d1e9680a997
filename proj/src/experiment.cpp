#include "lebkit/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace lebkit {

namespace {

using ojson = nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string extraction_key(Task t) { return is_closed(t) ? "blank" : "description"; }

}  // namespace

std::string_view to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::Ok: return "Ok";
    case ProbeStatus::Refusal: return "Refusal";
    case ProbeStatus::JsonError: return "JsonError";
    case ProbeStatus::TransportError: return "TransportError";
  }
  return "Ok";
}

ProbeStatus parse_probe_status(std::string_view s) {
  for (auto v : {ProbeStatus::Ok, ProbeStatus::Refusal, ProbeStatus::JsonError,
                 ProbeStatus::TransportError}) {
    if (to_string(v) == s) return v;
  }
  throw Error("unknown probe status: " + std::string(s));
}

std::string spec_hash(const ProbeSpec& spec, const std::string& model) {
  std::string key;
  auto add = [&](std::string_view part) {
    key += part;
    key.push_back('\x1f');
  };
  add(to_string(spec.task));
  add(std::to_string(spec.prompt_version));
  add(model);
  add(spec.speaker.label());
  add(spec.condition.key());
  add(spec.condition.attribute);
  add(spec.item.category);
  add(spec.item.attribute);
  add(to_string(spec.item.stereo_class));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(key)));
  return buf;
}

std::string serialize_record(const ProbeRecord& r) {
  ojson j;
  j["hash"] = r.hash;
  j["model"] = r.model_id;
  j["task"] = to_string(r.spec.task);
  j["prompt_version"] = r.spec.prompt_version;
  j["speaker"] = r.spec.speaker.label();
  j["speaker_group"] = r.spec.speaker.group();
  j["condition"] = r.spec.condition.key();
  j["random_attribute"] = r.spec.condition.attribute;
  j["category"] = r.spec.item.category;
  j["attribute"] = r.spec.item.attribute;
  j["class"] = to_string(r.spec.item.stereo_class);
  j["source_id"] = r.spec.item.source_id;
  j["status"] = to_string(r.status);
  j["extracted"] = r.extracted ? ojson(*r.extracted) : ojson(nullptr);
  j["json_error"] = r.json_error ? ojson(to_string(*r.json_error)) : ojson(nullptr);
  j["error"] = r.error;
  j["attempts"] = r.attempts;
  j["seconds"] = r.seconds;
  j["raw"] = r.raw;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

ProbeRecord parse_record(std::string_view line) {
  ProbeRecord r;
  try {
    auto j = nlohmann::json::parse(line);
    r.hash = j.at("hash").get<std::string>();
    r.model_id = j.at("model").get<std::string>();
    r.spec.task = parse_task(j.at("task").get<std::string>());
    r.spec.prompt_version = j.at("prompt_version").get<int>();
    r.spec.speaker = Speaker::parse(j.at("speaker").get<std::string>());
    r.spec.condition = parse_condition_key(j.at("condition").get<std::string>());
    r.spec.condition.attribute = j.value("random_attribute", "");
    r.spec.item.category = j.at("category").get<std::string>();
    r.spec.item.attribute = j.at("attribute").get<std::string>();
    auto cls = parse_stereo_class(j.at("class").get<std::string>());
    if (!cls) throw Error("unknown class");
    r.spec.item.stereo_class = *cls;
    r.spec.item.source_id = j.value("source_id", "");
    r.status = parse_probe_status(j.at("status").get<std::string>());
    if (!j.at("extracted").is_null()) r.extracted = j["extracted"].get<std::string>();
    if (!j.at("json_error").is_null()) {
      r.json_error = parse_json_error_kind(j["json_error"].get<std::string>());
    }
    r.error = j.value("error", "");
    r.attempts = j.value("attempts", 0);
    r.seconds = j.value("seconds", 0.0);
    r.raw = j.value("raw", "");
  } catch (const nlohmann::json::exception& e) {
    throw StoreError(std::string("bad record: ") + e.what());
  } catch (const Error& e) {
    throw StoreError(std::string("bad record: ") + e.what());
  }
  return r;
}

ProbeRecord classify_response(const ProbeSpec& spec, const std::string& model,
                              const QueryResult& result,
                              const RefusalDetector& refusal) {
  ProbeRecord r;
  r.spec = spec;
  r.model_id = model;
  r.hash = spec_hash(spec, model);
  r.raw = result.body;
  r.attempts = result.attempts;
  r.seconds = result.seconds;
  if (!result.ok) {
    r.status = ProbeStatus::TransportError;
    r.error = result.error;
    return r;
  }
  auto content = message_content(result.body);
  if (!content) {
    r.status = ProbeStatus::JsonError;
    r.json_error = JsonErrorKind::Malformed;
    r.error = "no message content in response";
    return r;
  }
  auto ex = extract_json(*content, extraction_key(spec.task), is_closed(spec.task));
  if (ex.ok()) {
    if (refusal(*ex.text)) {
      r.status = ProbeStatus::Refusal;
    } else {
      r.status = ProbeStatus::Ok;
      r.extracted = ex.text;
    }
    return r;
  }
  // Guardrail replies usually come back as plain prose, not JSON.
  if ((*ex.error == JsonErrorKind::Malformed ||
       *ex.error == JsonErrorKind::UnterminatedString) &&
      refusal(*content)) {
    r.status = ProbeStatus::Refusal;
    return r;
  }
  r.status = ProbeStatus::JsonError;
  r.json_error = ex.error;
  return r;
}

namespace {

struct ScannedStore {
  std::vector<std::string> lines;
  std::vector<std::size_t> line_numbers;
  std::size_t valid_bytes = 0;
};

ScannedStore scan_store(const std::string& path) {
  ScannedStore s;
  if (!std::filesystem::exists(path)) return s;
  std::string content = read_file(path);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string::npos) break;  // truncated tail
    ++line_no;
    std::string_view line(content.data() + pos, nl - pos);
    if (!trim(line).empty()) {
      s.lines.emplace_back(line);
      s.line_numbers.push_back(line_no);
    }
    pos = nl + 1;
    s.valid_bytes = pos;
  }
  return s;
}

}  // namespace

ResponseStore::ResponseStore(std::string path) : path_(std::move(path)) {
  auto scanned = scan_store(path_);
  for (std::size_t i = 0; i < scanned.lines.size(); ++i) {
    try {
      hashes_.insert(parse_record(scanned.lines[i]).hash);
    } catch (const StoreError& e) {
      throw StoreError(path_ + ":" + std::to_string(scanned.line_numbers[i]) +
                       ": " + e.what());
    }
  }
  valid_bytes_ = scanned.valid_bytes;
  if (std::filesystem::exists(path_) &&
      std::filesystem::file_size(path_) != valid_bytes_) {
    std::filesystem::resize_file(path_, valid_bytes_);
  }
}

bool ResponseStore::contains(const std::string& hash) const {
  std::lock_guard lock(mu_);
  return hashes_.count(hash) > 0;
}

bool ResponseStore::append(const ProbeRecord& r) {
  std::string line = serialize_record(r) + "\n";
  std::lock_guard lock(mu_);
  if (hashes_.count(r.hash)) return false;
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw StoreError("cannot open store for writing: " + path_);
  out << line;
  out.flush();
  if (!out) throw StoreError("write failed: " + path_);
  hashes_.insert(r.hash);
  valid_bytes_ += line.size();
  return true;
}

std::size_t ResponseStore::size() const {
  std::lock_guard lock(mu_);
  return hashes_.size();
}

std::vector<ProbeRecord> load_records(const std::string& path) {
  if (!std::filesystem::exists(path)) throw StoreError("no such store: " + path);
  auto scanned = scan_store(path);
  std::vector<ProbeRecord> out;
  out.reserve(scanned.lines.size());
  for (std::size_t i = 0; i < scanned.lines.size(); ++i) {
    try {
      out.push_back(parse_record(scanned.lines[i]));
    } catch (const StoreError& e) {
      throw StoreError(path + ":" + std::to_string(scanned.line_numbers[i]) +
                       ": " + e.what());
    }
  }
  return out;
}

namespace {

std::vector<Speaker> parse_speakers(const nlohmann::json& arr) {
  std::vector<Speaker> out;
  auto push = [&](Speaker s) {
    for (const auto& e : out) {
      if (e == s) throw ConfigError("duplicate speaker: " + s.label());
    }
    out.push_back(std::move(s));
  };
  for (const auto& v : arr) {
    std::string label = v.get<std::string>();
    if (label == "PoliticalPersonas" || label == "AgePersonas" || label == "all") {
      if (label == "all") push(Speaker::assistant());
      if (label != "AgePersonas") {
        for (const auto& p : political_personas()) push(Speaker::from_persona(p));
      }
      if (label != "PoliticalPersonas") {
        for (const auto& p : age_personas()) push(Speaker::from_persona(p));
      }
      continue;
    }
    try {
      push(Speaker::parse(label));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

std::string resolve(const std::string& p, const std::string& base) {
  if (p.empty() || base.empty() || std::filesystem::path(p).is_absolute()) return p;
  return (std::filesystem::path(base) / p).lexically_normal().string();
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "corpus", "endpoints", "speakers", "conditions", "seed", "random_k",
      "out", "tasks", "prompt_versions", "refusal_phrases", "fix_article",
      "max_in_flight", "retry", "temperature", "max_tokens"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw ConfigError("unknown config key: " + k);
  }

  ExperimentConfig cfg;
  try {
    for (const char* req : {"corpus", "endpoints", "speakers", "conditions", "out"}) {
      if (!j.contains(req)) throw ConfigError(std::string("missing config key: ") + req);
    }
    cfg.corpus = resolve(j["corpus"].get<std::string>(), base_dir);
    cfg.out = resolve(j["out"].get<std::string>(), base_dir);
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.random_k = j.value("random_k", std::size_t{3});
    if (cfg.random_k < 1 || cfg.random_k > 3) throw ConfigError("random_k must be 1..3");
    cfg.fix_article = j.value("fix_article", false);
    int default_in_flight = j.value("max_in_flight", 4);

    if (!j["endpoints"].is_array() || j["endpoints"].empty()) {
      throw ConfigError("endpoints must be a non-empty array");
    }
    std::set<std::string> models;
    for (const auto& e : j["endpoints"]) {
      EndpointConfig ep;
      ep.url = e.at("url").get<std::string>();
      ep.model = e.at("model").get<std::string>();
      ep.auth_env_var = e.value("auth_env_var", "");
      ep.max_in_flight = e.value("max_in_flight", default_in_flight);
      ep.rate = e.value("rate", 0.0);
      if (ep.max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
      if (ep.rate < 0) throw ConfigError("rate must be >= 0");
      if (!models.insert(ep.model).second) throw ConfigError("duplicate model: " + ep.model);
      try {
        parse_url(ep.url);
      } catch (const Error& err) {
        throw ConfigError(err.what());
      }
      cfg.endpoints.push_back(ep);
    }

    cfg.speakers = parse_speakers(j["speakers"]);
    for (const auto& c : j["conditions"]) {
      try {
        auto kind = parse_condition_kind(c.get<std::string>());
        for (auto k : cfg.conditions) {
          if (k == kind) throw ConfigError("duplicate condition: " + c.get<std::string>());
        }
        cfg.conditions.push_back(kind);
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    }
    if (j.contains("tasks")) {
      cfg.tasks.clear();
      for (const auto& t : j["tasks"]) {
        try {
          cfg.tasks.push_back(parse_task(t.get<std::string>()));
        } catch (const Error& e) {
          throw ConfigError(e.what());
        }
      }
    }
    if (j.contains("prompt_versions")) {
      cfg.prompt_versions = j["prompt_versions"].get<std::vector<int>>();
      for (int v : cfg.prompt_versions) {
        if (v < 1 || v > 4) throw ConfigError("prompt versions are 1..4");
      }
    }
    if (j.contains("refusal_phrases")) {
      cfg.refusal_phrases = j["refusal_phrases"].get<std::vector<std::string>>();
    }
    if (j.contains("retry")) {
      const auto& r = j["retry"];
      cfg.retry.max_retries = r.value("max_retries", cfg.retry.max_retries);
      cfg.retry.initial_backoff = std::chrono::milliseconds(
          r.value("initial_backoff_ms", cfg.retry.initial_backoff.count()));
      cfg.retry.multiplier = r.value("multiplier", cfg.retry.multiplier);
      cfg.retry.max_backoff = std::chrono::milliseconds(
          r.value("max_backoff_ms", cfg.retry.max_backoff.count()));
      if (cfg.retry.max_retries < 0) throw ConfigError("max_retries must be >= 0");
    }
    cfg.params.temperature = j.value("temperature", 0.0);
    cfg.params.max_tokens = j.value("max_tokens", 256);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  bool generation = false;
  for (auto t : cfg.tasks) generation |= t == Task::Generation;
  if (generation && cfg.speakers.empty()) throw ConfigError("no speakers configured");
  if (generation && cfg.conditions.empty()) throw ConfigError("no conditions configured");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, std::filesystem::path(path).parent_path().string());
}

std::vector<std::string> random_attributes_for(const Corpus& corpus,
                                               const std::string& category,
                                               std::size_t k, std::uint64_t seed) {
  return sample_random_attributes(corpus, category, k,
                                  mix(seed ^ fnv1a(normalize_label(category))));
}

std::vector<PlannedProbe> plan_experiment(const ExperimentConfig& cfg,
                                          const Corpus& corpus) {
  std::vector<PlannedProbe> plan;
  std::map<std::string, std::vector<std::string>> random_cache;
  auto random_for = [&](const std::string& category) -> const std::vector<std::string>& {
    auto key = normalize_label(category);
    auto it = random_cache.find(key);
    if (it == random_cache.end()) {
      it = random_cache
               .emplace(key, random_attributes_for(corpus, category, cfg.random_k, cfg.seed))
               .first;
    }
    return it->second;
  };
  auto push = [&](ProbeSpec spec) {
    for (std::size_t e = 0; e < cfg.endpoints.size(); ++e) {
      PlannedProbe p{spec, e, spec_hash(spec, cfg.endpoints[e].model)};
      plan.push_back(std::move(p));
    }
  };

  for (auto task : cfg.tasks) {
    for (const auto& item : corpus.items()) {
      if (task == Task::Generation) {
        for (auto kind : cfg.conditions) {
          std::vector<Condition> conds;
          if (kind == ConditionKind::Random) {
            const auto& attrs = random_for(item.category);
            for (std::size_t s = 0; s < attrs.size(); ++s) {
              conds.push_back({kind, attrs[s], static_cast<int>(s + 1)});
            }
          } else {
            conds.push_back({kind, "", 0});
          }
          for (const auto& cond : conds) {
            for (const auto& sp : cfg.speakers) {
              push(ProbeSpec{item, cond, sp, task, 0});
            }
          }
        }
      } else {
        for (int v : cfg.prompt_versions) {
          push(ProbeSpec{item, Condition{}, Speaker::assistant(), task, v});
        }
      }
    }
  }
  return plan;
}

std::string dry_run(const ExperimentConfig& cfg, const Corpus& corpus) {
  PromptOptions popt{cfg.fix_article};
  std::ostringstream out;
  for (const auto& p : plan_experiment(cfg, corpus)) {
    auto prompt = build_prompt(p.spec, popt);
    out << "### " << p.hash << " model=" << cfg.endpoints[p.endpoint].model
        << " speaker=" << p.spec.speaker.label()
        << " condition=" << p.spec.condition.key()
        << " task=" << to_string(p.spec.task)
        << " version=" << p.spec.prompt_version << "\n"
        << "[system]\n" << prompt.system << "\n"
        << "[user]\n" << prompt.user << "\n\n";
  }
  return out.str();
}

RunStats run_experiment(const ExperimentConfig& cfg, const Corpus& corpus,
                        ResponseStore& store, Transport& transport,
                        const RunOptions& opt) {
  std::vector<std::optional<std::string>> tokens;
  for (const auto& ep : cfg.endpoints) {
    if (ep.auth_env_var.empty()) {
      tokens.emplace_back();
      continue;
    }
    const char* v = std::getenv(ep.auth_env_var.c_str());
    if (!v) throw ConfigError("environment variable " + ep.auth_env_var + " is not set");
    tokens.emplace_back(v);
  }

  auto plan = plan_experiment(cfg, corpus);
  RunStats stats;
  stats.planned = plan.size();
  std::vector<std::vector<const PlannedProbe*>> queues(cfg.endpoints.size());
  for (const auto& p : plan) {
    if (store.contains(p.hash)) {
      ++stats.skipped;
    } else {
      queues[p.endpoint].push_back(&p);
    }
  }

  RefusalDetector refusal = cfg.refusal_phrases.empty()
                                ? RefusalDetector()
                                : RefusalDetector(cfg.refusal_phrases);
  PromptOptions popt{cfg.fix_article};
  std::mutex stats_mu;
  std::atomic<std::size_t> claimed{0};

  std::vector<std::unique_ptr<TokenBucket>> buckets;
  std::vector<std::unique_ptr<ChatClient>> clients;
  for (std::size_t e = 0; e < cfg.endpoints.size(); ++e) {
    const auto& ep = cfg.endpoints[e];
    buckets.push_back(std::make_unique<TokenBucket>(ep.rate, ep.max_in_flight));
    clients.push_back(std::make_unique<ChatClient>(ep.url, tokens[e], transport, cfg.retry,
                                                   buckets.back().get(), opt.sleeper));
  }

  std::vector<std::atomic<std::size_t>> next(cfg.endpoints.size());
  std::vector<std::jthread> workers;
  for (std::size_t e = 0; e < cfg.endpoints.size(); ++e) {
    int n = std::min<int>(cfg.endpoints[e].max_in_flight,
                          static_cast<int>(std::max<std::size_t>(1, queues[e].size())));
    for (int w = 0; w < n; ++w) {
      workers.emplace_back([&, e] {
        const auto& model = cfg.endpoints[e].model;
        while (true) {
          std::size_t i = next[e].fetch_add(1);
          if (i >= queues[e].size()) return;
          if (opt.limit && claimed.fetch_add(1) >= opt.limit) return;
          const auto& p = *queues[e][i];
          auto prompt = build_prompt(p.spec, popt);
          auto result = clients[e]->query(model, prompt.system, prompt.user, cfg.params);
          auto rec = classify_response(p.spec, model, result, refusal);
          bool added = store.append(rec);
          std::lock_guard lock(stats_mu);
          if (!added) continue;
          ++stats.executed;
          switch (rec.status) {
            case ProbeStatus::Ok: ++stats.ok; break;
            case ProbeStatus::Refusal: ++stats.refusal; break;
            case ProbeStatus::JsonError: ++stats.json_error; break;
            case ProbeStatus::TransportError: ++stats.transport_error; break;
          }
          if (opt.on_record) opt.on_record(rec);
        }
      });
    }
  }
  workers.clear();
  return stats;
}

}  // namespace lebkit
