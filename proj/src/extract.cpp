#include "lebkit/extract.hpp"

#include <cctype>

#include "json.hpp"
#include "lebkit/strings.hpp"

namespace lebkit {

using nlohmann::json;

std::string_view to_string(JsonErrorKind k) {
  switch (k) {
    case JsonErrorKind::UnterminatedString: return "UnterminatedString";
    case JsonErrorKind::NonLatinContent: return "NonLatinContent";
    case JsonErrorKind::Malformed: return "Malformed";
    case JsonErrorKind::MisplacedAnswer: return "MisplacedAnswer";
  }
  return "Malformed";
}

JsonErrorKind parse_json_error_kind(std::string_view s) {
  for (auto k : {JsonErrorKind::UnterminatedString, JsonErrorKind::NonLatinContent,
                 JsonErrorKind::Malformed, JsonErrorKind::MisplacedAnswer}) {
    if (to_string(k) == s) return k;
  }
  throw Error("unknown JSON error kind '" + std::string(s) + "'");
}

namespace {

std::string strip_fences(std::string_view s) {
  auto open = s.find("```");
  if (open == std::string_view::npos) return std::string(trim(s));
  auto body = s.find('\n', open);
  if (body == std::string_view::npos) return std::string(trim(s.substr(open + 3)));
  auto close = s.find("```", body);
  if (close == std::string_view::npos) return std::string(trim(s.substr(body + 1)));
  return std::string(trim(s.substr(body + 1, close - body - 1)));
}

Extraction fail(JsonErrorKind k) {
  Extraction e;
  e.error = k;
  return e;
}

Extraction accept(std::string value, bool recovered) {
  std::string v(trim(value));
  if (v.empty()) return fail(JsonErrorKind::Malformed);
  if (contains_cjk(v)) return fail(JsonErrorKind::NonLatinContent);
  Extraction e;
  e.text = std::move(v);
  e.recovered = recovered;
  return e;
}

struct Found {
  bool key_present = false;
  bool terminated = false;
  std::string value;
};

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// First quoted value after `key` (single or double quotes around both). The
// closing quote is the first matching quote followed by optional whitespace
// and ',' or '}'.
Found find_quoted(std::string_view s, std::string_view key) {
  Found f;
  std::size_t from = 0;
  while (true) {
    std::size_t k = std::string_view::npos;
    for (char q : {'"', '\''}) {
      std::string pat = std::string(1, q) + std::string(key) + std::string(1, q);
      auto pos = s.find(pat, from);
      if (pos != std::string_view::npos && (k == std::string_view::npos || pos < k)) {
        k = pos;
      }
    }
    if (k == std::string_view::npos) return f;
    std::size_t i = k + key.size() + 2;
    while (i < s.size() && is_ws(s[i])) ++i;
    if (i >= s.size() || s[i] != ':') {
      from = k + 1;
      continue;
    }
    ++i;
    while (i < s.size() && is_ws(s[i])) ++i;
    f.key_present = true;
    if (i >= s.size() || (s[i] != '"' && s[i] != '\'')) return f;
    char q = s[i++];
    std::string val;
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (c == '\\' && i + 1 < s.size()) {
        char n = s[++i];
        switch (n) {
          case 'n': val.push_back('\n'); break;
          case 't': val.push_back('\t'); break;
          case 'r': break;
          default: val.push_back(n); break;
        }
        continue;
      }
      if (c == q) {
        std::size_t j = i + 1;
        while (j < s.size() && is_ws(s[j])) ++j;
        if (j < s.size() && (s[j] == ',' || s[j] == '}')) {
          f.terminated = true;
          f.value = std::move(val);
          return f;
        }
      }
      val.push_back(c);
    }
    f.value = std::move(val);
    return f;
  }
}

std::optional<json> parse_object(const std::string& s) {
  auto open = s.find('{');
  auto close = s.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    return std::nullopt;
  }
  try {
    auto j = json::parse(s.substr(open, close - open + 1));
    if (j.is_object()) return j;
  } catch (const json::exception&) {
  }
  return std::nullopt;
}

bool filled(const json& obj, std::string_view key) {
  auto it = obj.find(std::string(key));
  return it != obj.end() && it->is_string() && !trim(it->get<std::string>()).empty();
}

}  // namespace

Extraction extract_json(std::string_view content, std::string_view key,
                        bool closed_task) {
  std::string body = strip_fences(content);
  if (auto obj = parse_object(body)) {
    if (filled(*obj, key)) return accept((*obj)[std::string(key)].get<std::string>(), false);
    if (closed_task && filled(*obj, "text")) {
      return fail(JsonErrorKind::MisplacedAnswer);
    }
    return fail(JsonErrorKind::Malformed);
  }
  Found f = find_quoted(body, key);
  if (f.key_present) {
    if (!f.terminated) {
      if (contains_cjk(f.value)) return fail(JsonErrorKind::NonLatinContent);
      return fail(JsonErrorKind::UnterminatedString);
    }
    return accept(f.value, true);
  }
  if (closed_task) {
    Found t = find_quoted(body, "text");
    if (t.key_present && t.terminated && !trim(t.value).empty()) {
      return fail(JsonErrorKind::MisplacedAnswer);
    }
  }
  if (contains_cjk(body)) return fail(JsonErrorKind::NonLatinContent);
  return fail(JsonErrorKind::Malformed);
}

std::optional<std::string> message_content(std::string_view body) {
  try {
    auto j = json::parse(body);
    const auto& c = j.at("choices").at(0).at("message").at("content");
    if (c.is_string()) return c.get<std::string>();
  } catch (const json::exception&) {
  }
  return std::nullopt;
}

RefusalDetector::RefusalDetector()
    : RefusalDetector({"I can't", "I cannot", "I won't", "I'm sorry",
                       "I am sorry", "as an AI"}) {}

RefusalDetector::RefusalDetector(std::vector<std::string> phrases,
                                 std::size_t window)
    : phrases_(std::move(phrases)), window_(window) {}

bool RefusalDetector::operator()(std::string_view text) const {
  std::string head = fold(text.substr(0, utf8_prefix_bytes(text, window_)));
  for (const auto& p : phrases_) {
    std::string needle = fold(p);
    if (!needle.empty() && head.find(needle) != std::string::npos) return true;
  }
  return false;
}

bool detect_refusal(std::string_view text, const RefusalDetector& detector) {
  return detector(text);
}

}  // namespace lebkit
