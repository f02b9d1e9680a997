#include "lebkit/csv.hpp"

namespace lebkit {

std::vector<CsvRecord> parse_csv(std::string_view s, char delim) {
  std::vector<CsvRecord> out;
  std::size_t i = 0;
  std::size_t line = 1;
  if (s.starts_with("\xEF\xBB\xBF")) i = 3;
  auto at_end_of_field = [&](std::size_t k) {
    return k >= s.size() || s[k] == delim || s[k] == '\n' || s[k] == '\r';
  };
  while (i < s.size()) {
    CsvRecord rec{line, {}};
    std::string field;
    while (true) {
      if (i < s.size() && s[i] == '"') {
        std::size_t open_line = line;
        ++i;
        while (true) {
          if (i >= s.size()) throw CsvError(open_line, "unterminated quoted field");
          if (s[i] == '"') {
            if (i + 1 < s.size() && s[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (s[i] == '\n') ++line;
          field.push_back(s[i++]);
        }
        if (!at_end_of_field(i)) {
          throw CsvError(line, "unexpected character after quoted field");
        }
      } else {
        while (!at_end_of_field(i)) {
          if (s[i] == '"') throw CsvError(line, "stray quote in unquoted field");
          field.push_back(s[i++]);
        }
      }
      rec.fields.push_back(std::move(field));
      field.clear();
      if (i < s.size() && s[i] == delim) {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == '\r') ++i;
      if (i < s.size() && s[i] == '\n') ++i;
      ++line;
      break;
    }
    bool blank = rec.fields.size() == 1 && trim(rec.fields[0]).empty();
    if (!blank) out.push_back(std::move(rec));
  }
  return out;
}

std::string csv_escape(std::string_view field, char delim) {
  if (field.find_first_of(std::string{delim, '"', '\n', '\r'}) ==
      std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace lebkit
