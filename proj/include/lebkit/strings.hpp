#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lebkit {

// Base class for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ASCII lower-casing plus typographic apostrophe folding (U+2018/U+2019 -> ').
// Non-ASCII bytes are otherwise left alone.
std::string fold(std::string_view s);

std::string_view trim(std::string_view s);

// fold + trim + internal whitespace collapsed to single spaces.
std::string normalize_label(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);

// Decodes UTF-8; invalid bytes are mapped to U+FFFD one byte at a time.
std::u32string decode_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);

// Byte length of the first `n` code points of `s`.
std::size_t utf8_prefix_bytes(std::string_view s, std::size_t n);

// CJK ideographs, kana, hangul, CJK punctuation and fullwidth forms.
bool is_cjk(char32_t cp);
bool contains_cjk(std::string_view s);

std::string read_file(const std::string& path);

}  // namespace lebkit
