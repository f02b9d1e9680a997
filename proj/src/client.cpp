#include "lebkit/client.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace lebkit {

ParsedUrl parse_url(std::string_view url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw Error("endpoint URL needs a scheme: " + std::string(url));
  }
  std::string scheme = fold(url.substr(0, scheme_end));
  if (scheme != "http" && scheme != "https") {
    throw Error("unsupported URL scheme: " + std::string(url));
  }
  auto path_start = url.find('/', scheme_end + 3);
  ParsedUrl p;
  if (path_start == std::string_view::npos) {
    p.scheme_host_port = std::string(url);
    p.path = "/";
  } else {
    p.scheme_host_port = std::string(url.substr(0, path_start));
    p.path = std::string(url.substr(path_start));
  }
  if (p.scheme_host_port.size() <= scheme_end + 3) {
    throw Error("endpoint URL has no host: " + std::string(url));
  }
  return p;
}

HttpTransport::HttpTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

HttpResponse HttpTransport::post(const std::string& url,
                                 const std::map<std::string, std::string>& headers,
                                 const std::string& body) {
  auto parsed = parse_url(url);
  httplib::Client cli(parsed.scheme_host_port);
  cli.set_connection_timeout(timeout_);
  cli.set_read_timeout(timeout_);
  cli.set_write_timeout(timeout_);
  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  auto res = cli.Post(parsed.path, h, body, "application/json");
  if (!res) {
    throw TransportFailure("request to " + url + " failed: " +
                           httplib::to_string(res.error()));
  }
  return HttpResponse{res->status, res->body};
}

std::chrono::milliseconds RetryPolicy::backoff(int retry) const {
  double ms = static_cast<double>(initial_backoff.count()) *
              std::pow(multiplier, std::max(0, retry - 1));
  ms = std::min(ms, static_cast<double>(max_backoff.count()));
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

TokenBucket::TokenBucket(double rate_per_second, double burst)
    : rate_(rate_per_second),
      burst_(std::max(1.0, burst)),
      tokens_(std::max(1.0, burst)),
      last_(Clock::now()) {}

TokenBucket::Clock::duration TokenBucket::try_acquire(Clock::time_point now) {
  std::lock_guard lock(mu_);
  if (rate_ <= 0) return Clock::duration::zero();
  if (now > last_) {
    std::chrono::duration<double> dt = now - last_;
    tokens_ = std::min(burst_, tokens_ + dt.count() * rate_);
    last_ = now;
  }
  if (tokens_ >= 1.0) {
    tokens_ -= 1.0;
    return Clock::duration::zero();
  }
  std::chrono::duration<double> wait((1.0 - tokens_) / rate_);
  return std::chrono::duration_cast<Clock::duration>(wait) + Clock::duration(1);
}

void TokenBucket::acquire() {
  while (true) {
    auto wait = try_acquire(Clock::now());
    if (wait == Clock::duration::zero()) return;
    std::this_thread::sleep_for(wait);
  }
}

std::string chat_request_body(const std::string& model,
                              const std::string& system,
                              const std::string& user,
                              const QueryParams& params) {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["messages"] = nlohmann::ordered_json::array(
      {{{"role", "system"}, {"content", system}},
       {{"role", "user"}, {"content", user}}});
  j["temperature"] = params.temperature;
  j["max_tokens"] = params.max_tokens;
  return j.dump();
}

ChatClient::ChatClient(std::string url, std::optional<std::string> token,
                       Transport& transport, RetryPolicy retry,
                       TokenBucket* bucket, Sleeper sleeper)
    : url_(std::move(url)),
      token_(std::move(token)),
      transport_(transport),
      retry_(retry),
      bucket_(bucket),
      sleeper_(std::move(sleeper)) {
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

QueryResult ChatClient::query(const std::string& model, const std::string& system,
                              const std::string& user, const QueryParams& params) {
  std::map<std::string, std::string> headers = {{"Content-Type", "application/json"}};
  if (token_) headers["Authorization"] = "Bearer " + *token_;
  const std::string body = chat_request_body(model, system, user, params);

  QueryResult r;
  auto start = std::chrono::steady_clock::now();
  for (int attempt = 0;; ++attempt) {
    if (attempt > 0) sleeper_(retry_.backoff(attempt));
    if (bucket_) bucket_->acquire();
    ++r.attempts;
    bool retriable = false;
    try {
      HttpResponse resp = transport_.post(url_, headers, body);
      r.status = resp.status;
      r.body = std::move(resp.body);
      if (resp.status >= 200 && resp.status < 300) {
        r.ok = true;
        r.error.clear();
        break;
      }
      if (resp.status == 401 || resp.status == 403) {
        r.auth_error = true;
        r.error = "auth: HTTP " + std::to_string(resp.status);
        break;
      }
      r.error = "HTTP " + std::to_string(resp.status);
      retriable = resp.status == 429 || resp.status >= 500;
    } catch (const TransportFailure& e) {
      r.status = 0;
      r.body.clear();
      r.error = e.what();
      retriable = true;
    }
    if (!retriable || attempt >= retry_.max_retries) break;
  }
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  r.seconds = dt.count();
  return r;
}

}  // namespace lebkit
