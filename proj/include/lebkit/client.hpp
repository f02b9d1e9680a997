#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "lebkit/strings.hpp"

namespace lebkit {

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Thrown by transports when no HTTP response was obtained.
class TransportFailure : public Error {
 public:
  using Error::Error;
};

// One request/response boundary; the protocol-specific part of the client.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post(const std::string& url,
                            const std::map<std::string, std::string>& headers,
                            const std::string& body) = 0;
};

// cpp-httplib based HTTP/HTTPS transport.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::chrono::seconds timeout = std::chrono::seconds(120));
  HttpResponse post(const std::string& url,
                    const std::map<std::string, std::string>& headers,
                    const std::string& body) override;

 private:
  std::chrono::seconds timeout_;
};

struct ParsedUrl {
  std::string scheme_host_port;  // "https://api.example.com:8443"
  std::string path;              // "/v1/chat/completions"
};
ParsedUrl parse_url(std::string_view url);

struct RetryPolicy {
  int max_retries = 5;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{30000};

  std::chrono::milliseconds backoff(int retry) const;  // retry = 1, 2, ...
};

// Blocking token bucket shared by the workers of one endpoint.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  // rate <= 0 disables limiting.
  TokenBucket(double rate_per_second, double burst);
  void acquire();
  // Non-blocking variant; returns the wait needed before a token is free.
  Clock::duration try_acquire(Clock::time_point now);

 private:
  std::mutex mu_;
  double rate_;
  double burst_;
  double tokens_;
  Clock::time_point last_;
};

struct QueryParams {
  double temperature = 0.0;
  int max_tokens = 256;
};

struct QueryResult {
  bool ok = false;
  int status = 0;
  std::string body;
  int attempts = 0;
  double seconds = 0.0;
  bool auth_error = false;
  std::string error;
};

std::string chat_request_body(const std::string& model,
                              const std::string& system,
                              const std::string& user,
                              const QueryParams& params);

// OpenAI-compatible chat-completions client. Retries transport failures,
// 429 and 5xx with exponential backoff; 401/403 fail immediately.
class ChatClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  ChatClient(std::string url, std::optional<std::string> token,
             Transport& transport, RetryPolicy retry = {},
             TokenBucket* bucket = nullptr, Sleeper sleeper = {});

  QueryResult query(const std::string& model, const std::string& system,
                    const std::string& user, const QueryParams& params = {});

 private:
  std::string url_;
  std::optional<std::string> token_;
  Transport& transport_;
  RetryPolicy retry_;
  TokenBucket* bucket_;
  Sleeper sleeper_;
};

}  // namespace lebkit
