#include "lebkit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "json.hpp"
#include "lebkit/csv.hpp"

namespace lebkit {

using nlohmann::json;

std::string_view to_string(StereoClass c) {
  switch (c) {
    case StereoClass::Ability: return "Ability";
    case StereoClass::Age: return "Age";
    case StereoClass::AstrologicalSign: return "AstrologicalSign";
    case StereoClass::Gender: return "Gender";
    case StereoClass::NationalityOrigin: return "NationalityOrigin";
    case StereoClass::Profession: return "Profession";
    case StereoClass::Race: return "Race";
    case StereoClass::Other: return "Other";
  }
  return "Other";
}

std::optional<StereoClass> parse_stereo_class(std::string_view label) {
  std::string key;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  static const std::map<std::string, StereoClass, std::less<>> kAliases = {
      {"ability", StereoClass::Ability},
      {"disability", StereoClass::Ability},
      {"age", StereoClass::Age},
      {"astrologicalsign", StereoClass::AstrologicalSign},
      {"astrological", StereoClass::AstrologicalSign},
      {"astrology", StereoClass::AstrologicalSign},
      {"zodiac", StereoClass::AstrologicalSign},
      {"zodiacsign", StereoClass::AstrologicalSign},
      {"gender", StereoClass::Gender},
      {"nationalityorigin", StereoClass::NationalityOrigin},
      {"nationalityplaceoforigin", StereoClass::NationalityOrigin},
      {"nationality", StereoClass::NationalityOrigin},
      {"origin", StereoClass::NationalityOrigin},
      {"placeoforigin", StereoClass::NationalityOrigin},
      {"profession", StereoClass::Profession},
      {"occupation", StereoClass::Profession},
      {"race", StereoClass::Race},
      {"ethnicity", StereoClass::Race},
      {"raceethnicity", StereoClass::Race},
      {"other", StereoClass::Other},
  };
  auto it = kAliases.find(key);
  if (it == kAliases.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

AttributeNormalizer AttributeNormalizer::load(const std::string& path) {
  return parse(read_file(path));
}

AttributeNormalizer AttributeNormalizer::parse(std::string_view tsv) {
  AttributeNormalizer n;
  std::size_t row = 0;
  for (const auto& raw : split(tsv, '\n')) {
    ++row;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || trim(line).front() == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 2 || trim(cols[0]).empty() || trim(cols[1]).empty()) {
      throw CorpusError(row, "normalization table needs 'from<TAB>to'");
    }
    n.add(cols[0], cols[1]);
  }
  return n;
}

void AttributeNormalizer::add(std::string_view from, std::string_view to) {
  table_[normalize_label(from)] = std::string(trim(to));
}

std::string AttributeNormalizer::apply(std::string_view attribute) const {
  auto it = table_.find(normalize_label(attribute));
  if (it == table_.end()) return std::string(trim(attribute));
  return it->second;
}

// ---------------------------------------------------------------------------

Corpus Corpus::from_rows(const std::vector<StereoItem>& rows,
                         const std::vector<std::size_t>& mentions,
                         bool mentions_column) {
  Corpus c;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    StereoItem item = rows[i];
    item.category = std::string(trim(item.category));
    item.attribute = std::string(trim(item.attribute));
    if (item.category.empty() || item.attribute.empty()) {
      throw CorpusError(0, "empty category or attribute");
    }
    std::size_t weight = i < mentions.size() ? mentions[i] : 1;
    std::string cat = normalize_label(item.category);
    std::string attr = normalize_label(item.attribute);
    auto key = std::make_pair(cat, attr);
    if (auto it = seen.find(key); it != seen.end()) {
      ++c.duplicates_;
      c.mentions_[it->second] += weight;
      const auto& kept = c.items_[it->second];
      if (kept.stereo_class != item.stereo_class) {
        c.warnings_.push_back("duplicate pair (" + item.category + ", " +
                              item.attribute +
                              ") with conflicting class; kept " +
                              std::string(to_string(kept.stereo_class)));
      }
      continue;
    }
    seen.emplace(key, c.items_.size());
    c.category_index_[cat].insert(attr);
    c.attribute_display_.emplace(attr, item.attribute);
    c.items_.push_back(std::move(item));
    c.mentions_.push_back(weight);
  }
  if (c.duplicates_ > 0) {
    c.warnings_.push_back("collapsed " + std::to_string(c.duplicates_) +
                          " duplicate row(s)");
  }
  c.mentions_preserved_ = mentions_column || c.duplicates_ > 0;
  return c;
}

std::set<std::string> Corpus::attributes() const {
  std::set<std::string> out;
  for (const auto& [attr, _] : attribute_display_) out.insert(attr);
  return out;
}

const std::string& Corpus::display_attribute(
    const std::string& normalized) const {
  auto it = attribute_display_.find(normalized);
  if (it == attribute_display_.end()) {
    throw Error("unknown attribute: " + normalized);
  }
  return it->second;
}

// ---------------------------------------------------------------------------

namespace {

struct RawRow {
  std::size_t row;
  StereoItem item;
  std::size_t mentions = 1;
};

StereoItem make_item(std::size_t row, std::string category,
                     std::string attribute, std::string_view cls,
                     std::string source_id, const LoadOptions& opt) {
  StereoItem item;
  item.category = std::string(trim(category));
  item.attribute = std::string(trim(attribute));
  if (item.category.empty()) throw CorpusError(row, "empty category");
  if (item.attribute.empty()) throw CorpusError(row, "empty attribute");
  if (opt.normalizer) item.attribute = opt.normalizer->apply(item.attribute);
  auto c = parse_stereo_class(cls);
  if (!c) {
    throw CorpusError(row, "unknown class label '" + std::string(cls) + "'");
  }
  item.stereo_class = *c;
  item.source_id = std::string(trim(source_id));
  return item;
}

std::size_t parse_mentions(std::size_t row, std::string_view s) {
  s = trim(s);
  if (s.empty()) return 1;
  std::size_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw CorpusError(row, "mentions must be a positive integer");
    }
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  if (v == 0) throw CorpusError(row, "mentions must be a positive integer");
  return v;
}

Corpus build(const std::vector<RawRow>& raw, bool mentions_column) {
  std::vector<StereoItem> items;
  std::vector<std::size_t> mentions;
  items.reserve(raw.size());
  for (const auto& r : raw) {
    items.push_back(r.item);
    mentions.push_back(r.mentions);
  }
  return Corpus::from_rows(items, mentions, mentions_column);
}

Corpus parse_csv_corpus(std::string_view content, const LoadOptions& opt) {
  std::vector<CsvRecord> records;
  try {
    records = parse_csv(content);
  } catch (const CsvError& e) {
    throw CorpusError(e.row(), std::string(e.what()).substr(
                                   std::string(e.what()).find(": ") + 2));
  }
  if (records.empty()) return Corpus();
  const auto& header = records.front().fields;
  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (fold(trim(header[i])) == fold(name)) return i;
    }
    return std::nullopt;
  };
  auto cat = column(opt.columns.category);
  auto attr = column(opt.columns.attribute);
  auto cls = column(opt.columns.stereo_class);
  auto src = column(opt.columns.source_id);
  auto men = column(opt.columns.mentions);
  if (!cat || !attr || !cls) {
    throw CorpusError(1, "header must name columns '" + opt.columns.category +
                             "', '" + opt.columns.attribute + "', '" +
                             opt.columns.stereo_class + "'");
  }
  std::vector<RawRow> raw;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw CorpusError(rec.row, "expected " + std::to_string(header.size()) +
                                     " fields, got " +
                                     std::to_string(rec.fields.size()));
    }
    RawRow row;
    row.row = rec.row;
    row.item = make_item(rec.row, rec.fields[*cat], rec.fields[*attr],
                         rec.fields[*cls], src ? rec.fields[*src] : "", opt);
    if (men) row.mentions = parse_mentions(rec.row, rec.fields[*men]);
    raw.push_back(std::move(row));
  }
  return build(raw, men.has_value());
}

std::string json_string_field(std::size_t row, const json& obj,
                              const std::string& key, bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw CorpusError(row, "missing key '" + key + "'");
    return "";
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw CorpusError(row, "key '" + key + "' must be a string");
}

Corpus parse_jsonl_corpus(std::string_view content, const LoadOptions& opt) {
  std::vector<RawRow> raw;
  bool mentions_column = false;
  std::size_t row = 0;
  for (const auto& line : split(content, '\n')) {
    ++row;
    if (trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError(row, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw CorpusError(row, "expected a JSON object");
    RawRow r;
    r.row = row;
    r.item = make_item(row, json_string_field(row, obj, opt.columns.category, true),
                       json_string_field(row, obj, opt.columns.attribute, true),
                       json_string_field(row, obj, opt.columns.stereo_class, true),
                       json_string_field(row, obj, opt.columns.source_id, false),
                       opt);
    if (auto it = obj.find(opt.columns.mentions); it != obj.end()) {
      mentions_column = true;
      if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) {
        throw CorpusError(row, "mentions must be a positive integer");
      }
      r.mentions = it->get<std::size_t>();
    }
    raw.push_back(std::move(r));
  }
  return build(raw, mentions_column);
}

}  // namespace

Corpus parse_corpus(std::string_view content, CorpusFormat format,
                    const LoadOptions& options) {
  return format == CorpusFormat::Csv ? parse_csv_corpus(content, options)
                                     : parse_jsonl_corpus(content, options);
}

Corpus load_corpus(const std::string& path, CorpusFormat format,
                   const LoadOptions& options) {
  return parse_corpus(read_file(path), format, options);
}

Corpus load_corpus(const std::string& path, const LoadOptions& options) {
  std::string p = fold(path);
  bool jsonl = p.ends_with(".jsonl") || p.ends_with(".json") ||
               p.ends_with(".ndjson");
  return load_corpus(path, jsonl ? CorpusFormat::Jsonl : CorpusFormat::Csv,
                     options);
}

std::string serialize_jsonl(const Corpus& corpus) {
  std::string out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& item = corpus.items()[i];
    json obj = json::object();
    obj["category"] = item.category;
    obj["attribute"] = item.attribute;
    obj["class"] = std::string(to_string(item.stereo_class));
    obj["source_id"] = item.source_id;
    if (corpus.mentions_preserved()) obj["mentions"] = corpus.mentions()[i];
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

ClassDistribution class_distribution(const Corpus& corpus) {
  ClassDistribution d;
  for (auto c : kAllClasses) d.counts[c] = {};
  d.mentions_from_provenance = corpus.mentions_preserved();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto& cc = d.counts[corpus.items()[i].stereo_class];
    cc.instances += 1;
    cc.mentions += corpus.mentions_preserved() ? corpus.mentions()[i] : 1;
  }
  return d;
}

std::vector<std::string> sample_random_attributes(const Corpus& corpus,
                                                  std::string_view category,
                                                  std::size_t k,
                                                  std::uint64_t seed) {
  std::string cat = normalize_label(category);
  auto it = corpus.category_index().find(cat);
  if (it == corpus.category_index().end()) {
    throw Error("unknown category: " + std::string(category));
  }
  std::vector<std::string> pool;
  for (const auto& a : corpus.attributes()) {
    if (!it->second.count(a)) pool.push_back(a);
  }
  if (pool.size() < k) {
    throw Error("category '" + std::string(category) + "' has only " +
                std::to_string(pool.size()) + " eligible attribute(s), need " +
                std::to_string(k));
  }
  std::mt19937_64 eng(seed);
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + bounded_draw(eng, pool.size() - i);
    std::swap(pool[i], pool[j]);
    out.push_back(corpus.display_attribute(pool[i]));
  }
  return out;
}

}  // namespace lebkit
