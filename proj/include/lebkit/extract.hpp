#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lebkit {

enum class JsonErrorKind { UnterminatedString, NonLatinContent, Malformed, MisplacedAnswer };

std::string_view to_string(JsonErrorKind k);
JsonErrorKind parse_json_error_kind(std::string_view s);

struct Extraction {
  std::optional<std::string> text;
  std::optional<JsonErrorKind> error;
  bool recovered = false;  // value came from the pattern fallback

  bool ok() const { return text.has_value(); }
};

// Reads `key` ("description" for generation, "blank" for closed tasks) from a
// model reply. Code fences are stripped and strict JSON is tried first; on
// failure the first quoted value after the key is recovered by pattern.
// With `closed_task`, a reply that only fills "text" is a MisplacedAnswer.
Extraction extract_json(std::string_view content, std::string_view key,
                        bool closed_task = false);

// choices[0].message.content of a chat-completions body, if present.
std::optional<std::string> message_content(std::string_view body);

class RefusalDetector {
 public:
  // "I can't", "I cannot", "I won't", "I'm sorry", "I am sorry", "as an AI"
  RefusalDetector();
  explicit RefusalDetector(std::vector<std::string> phrases,
                           std::size_t window = 120);

  // Case-insensitive match of any phrase inside the first `window` code
  // points; typographic apostrophes count as ASCII ones.
  bool operator()(std::string_view text) const;
  const std::vector<std::string>& phrases() const { return phrases_; }
  std::size_t window() const { return window_; }

 private:
  std::vector<std::string> phrases_;
  std::size_t window_;
};

bool detect_refusal(std::string_view text,
                    const RefusalDetector& detector = RefusalDetector());

}  // namespace lebkit
