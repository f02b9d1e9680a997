#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lebkit/strings.hpp"

namespace lebkit {

class CsvError : public Error {
 public:
  CsvError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

struct CsvRecord {
  std::size_t row;  // physical line where the record starts (1-based)
  std::vector<std::string> fields;
};

// RFC 4180 style: quoted fields may hold delimiters, newlines and "" escapes.
// CRLF accepted, a leading UTF-8 BOM skipped, blank lines dropped.
std::vector<CsvRecord> parse_csv(std::string_view s, char delim = ',');

// Quotes a field when it contains the delimiter, a quote or a line break.
std::string csv_escape(std::string_view field, char delim = ',');

}  // namespace lebkit
