#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lebkit/strings.hpp"

namespace lebkit {

enum class StereoClass {
  Ability,
  Age,
  AstrologicalSign,
  Gender,
  NationalityOrigin,
  Profession,
  Race,
  Other,
};

inline constexpr std::array<StereoClass, 8> kAllClasses = {
    StereoClass::Ability,           StereoClass::Age,
    StereoClass::AstrologicalSign,  StereoClass::Gender,
    StereoClass::NationalityOrigin, StereoClass::Profession,
    StereoClass::Race,              StereoClass::Other};

std::string_view to_string(StereoClass c);

// Accepts the canonical names and loose variants ("Nationality/Origin",
// "astrological sign", "ethnicity", ...). Case and punctuation are ignored.
std::optional<StereoClass> parse_stereo_class(std::string_view label);

struct StereoItem {
  std::string category;
  std::string attribute;
  StereoClass stereo_class = StereoClass::Other;
  std::string source_id;

  bool operator==(const StereoItem&) const = default;
};

class CorpusError : public Error {
 public:
  CorpusError(std::size_t row, const std::string& what)
      : Error(row ? "row " + std::to_string(row) + ": " + what : what),
        row_(row) {}
  // 1-based physical row (CSV: header is row 1; JSONL: line number), 0 if n/a.
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

enum class CorpusFormat { Csv, Jsonl };

// Optional "from<TAB>to" table applied to attributes at load time.
// Keys are matched on normalized labels.
class AttributeNormalizer {
 public:
  AttributeNormalizer() = default;
  static AttributeNormalizer load(const std::string& path);
  static AttributeNormalizer parse(std::string_view tsv);

  void add(std::string_view from, std::string_view to);
  std::string apply(std::string_view attribute) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::string> table_;
};

struct ColumnMap {
  std::string category = "category";
  std::string attribute = "attribute";
  std::string stereo_class = "class";
  std::string source_id = "source_id";
  std::string mentions = "mentions";
};

struct LoadOptions {
  ColumnMap columns;
  const AttributeNormalizer* normalizer = nullptr;
};

class Corpus {
 public:
  Corpus() = default;

  // Builds a corpus from raw rows, collapsing duplicates on normalized
  // (category, attribute). `mentions` gives per-row weights (default 1).
  static Corpus from_rows(const std::vector<StereoItem>& rows,
                          const std::vector<std::size_t>& mentions = {},
                          bool mentions_column = false);

  const std::vector<StereoItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  // normalized category -> normalized attributes
  const std::map<std::string, std::set<std::string>>& category_index() const {
    return category_index_;
  }
  // Distinct normalized attributes over the whole corpus.
  std::set<std::string> attributes() const;

  // Raw-row count per item (parallel to items()).
  const std::vector<std::size_t>& mentions() const { return mentions_; }
  // True when the source carried pre-deduplication information.
  bool mentions_preserved() const { return mentions_preserved_; }
  std::size_t duplicate_count() const { return duplicates_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Display form of a normalized attribute.
  const std::string& display_attribute(const std::string& normalized) const;

  bool operator==(const Corpus& o) const {
    return items_ == o.items_ && mentions_ == o.mentions_ &&
           mentions_preserved_ == o.mentions_preserved_;
  }

 private:
  std::vector<StereoItem> items_;
  std::vector<std::size_t> mentions_;
  std::map<std::string, std::set<std::string>> category_index_;
  std::map<std::string, std::string> attribute_display_;
  bool mentions_preserved_ = false;
  std::size_t duplicates_ = 0;
  std::vector<std::string> warnings_;
};

Corpus parse_corpus(std::string_view content, CorpusFormat format,
                    const LoadOptions& options = {});
Corpus load_corpus(const std::string& path, CorpusFormat format,
                   const LoadOptions& options = {});
// Picks the format from the extension (.jsonl/.json -> JSONL, else CSV).
Corpus load_corpus(const std::string& path, const LoadOptions& options = {});

// One JSON object per line, keys category/attribute/class/source_id, plus
// mentions when provenance is preserved.
std::string serialize_jsonl(const Corpus& corpus);

struct ClassCounts {
  std::size_t mentions = 0;
  std::size_t instances = 0;
  bool operator==(const ClassCounts&) const = default;
};

struct ClassDistribution {
  std::map<StereoClass, ClassCounts> counts;  // all eight classes present
  bool mentions_from_provenance = false;      // false: mentions == instances
};

ClassDistribution class_distribution(const Corpus& corpus);

// k distinct attributes drawn uniformly without replacement from the corpus
// attributes not associated with `category`. Deterministic in
// (corpus, category, k, seed). Returned in draw order, display form.
std::vector<std::string> sample_random_attributes(const Corpus& corpus,
                                                  std::string_view category,
                                                  std::size_t k,
                                                  std::uint64_t seed);

// Uniform integer in [0, bound) from a 64-bit engine, by rejection.
template <class Engine>
std::uint64_t bounded_draw(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace lebkit
