#include "lebkit/lexicons.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <set>
#include <sstream>

#include "lebkit/csv.hpp"
#include "lebkit/text.hpp"

namespace lebkit {

// ---------------------------------------------------------------------------
// Concreteness norms

std::string ConcretenessLexicon::key_of(std::string_view expression) {
  std::string key;
  for (const auto& t : tokenize(expression)) {
    if (!key.empty()) key.push_back(' ');
    key += fold(t);
  }
  return key;
}

bool ConcretenessLexicon::add(std::string_view expression, double rating) {
  if (!(rating >= 1.0 && rating <= 5.0)) {
    std::ostringstream msg;
    msg << "rating " << rating << " for '" << expression << "' outside [1,5]";
    throw LexiconError(msg.str());
  }
  std::string key = key_of(expression);
  if (key.empty()) {
    throw LexiconError("empty expression in concreteness norms");
  }
  std::size_t n = static_cast<std::size_t>(
      std::count(key.begin(), key.end(), ' ') + 1);
  auto& table = n >= 2 ? multiwords_ : unigrams_;
  if (n >= 2) max_mwe_len_ = std::max(max_mwe_len_, n);
  auto [it, inserted] = table.insert_or_assign(key, rating);
  return inserted;
}

std::optional<double> ConcretenessLexicon::unigram(std::string_view key) const {
  auto it = unigrams_.find(std::string(key));
  if (it == unigrams_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> ConcretenessLexicon::multiword(
    std::string_view key) const {
  auto it = multiwords_.find(std::string(key));
  if (it == multiwords_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       std::initializer_list<std::string_view> names) {
  for (auto name : names) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (fold(trim(header[i])) == name) return i;
    }
  }
  return std::nullopt;
}

}  // namespace

void parse_concreteness(ConcretenessLexicon& lex, std::string_view content,
                        const std::string& source) {
  auto first_nl = content.find('\n');
  std::string_view first = content.substr(0, first_nl);
  char delim = first.find('\t') != std::string_view::npos ? '\t' : ',';
  std::vector<CsvRecord> rows;
  try {
    rows = parse_csv(content, delim);
  } catch (const CsvError& e) {
    throw LexiconError(source + ": " + e.what());
  }
  if (rows.empty()) return;
  std::size_t word_col = 0;
  std::size_t rating_col = 1;
  std::size_t start = 0;
  const auto& head = rows.front().fields;
  bool has_header = head.size() < 2 || !parse_double(head[1]);
  if (has_header) {
    word_col = find_column(head, {"word", "expression", "term", "item"})
                   .value_or(0);
    auto rc = find_column(head, {"conc.m", "mean_c", "conc_m", "rating",
                                 "mean", "concreteness"});
    if (!rc) {
      throw LexiconError(source + ": no rating column in header");
    }
    rating_col = *rc;
    start = 1;
  }
  for (std::size_t r = start; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    std::string where = source + ": row " + std::to_string(rows[r].row);
    if (f.size() <= std::max(word_col, rating_col)) {
      throw LexiconError(where + ": too few columns");
    }
    auto rating = parse_double(f[rating_col]);
    if (!rating) {
      throw LexiconError(where + ": rating '" + f[rating_col] +
                         "' is not a number");
    }
    try {
      if (!lex.add(f[word_col], *rating)) {
        lex.warn(where + ": '" + std::string(trim(f[word_col])) +
                 "' overrides an earlier rating");
      }
    } catch (const LexiconError& e) {
      throw LexiconError(where + ": " + e.what());
    }
  }
}

ConcretenessLexicon load_concreteness(const std::vector<std::string>& paths) {
  ConcretenessLexicon lex;
  for (const auto& p : paths) {
    std::string content;
    try {
      content = read_file(p);
    } catch (const Error& e) {
      throw LexiconError(e.what());
    }
    parse_concreteness(lex, content, p);
  }
  return lex;
}

// ---------------------------------------------------------------------------
// WordNet store

std::string WordNetStore::key_of(std::string_view lemma) {
  std::string k = fold(trim(lemma));
  std::replace(k.begin(), k.end(), ' ', '_');
  return k;
}

void WordNetStore::add_noun_synset(const std::string& id,
                                   std::vector<std::string> lemmas,
                                   std::vector<std::string> hypernyms) {
  finalized_ = false;
  nouns_[id] = NounSynset{std::move(lemmas), std::move(hypernyms)};
}

void WordNetStore::add_noun_sense(std::string_view lemma,
                                  const std::string& id) {
  finalized_ = false;
  noun_index_[key_of(lemma)].push_back(id);
}

void WordNetStore::set_adjective(std::string_view lemma, AdjRelations rel) {
  finalized_ = false;
  adj_index_[key_of(lemma)] = rel;
}

void WordNetStore::finalize() {
  for (const auto& [id, syn] : nouns_) {
    for (const auto& h : syn.hypernyms) {
      if (!nouns_.count(h)) {
        throw LexiconError("noun synset " + id + " has hypernym " + h +
                           " that is not a noun synset");
      }
    }
  }
  for (const auto& [lemma, ids] : noun_index_) {
    for (const auto& id : ids) {
      if (!nouns_.count(id)) {
        throw LexiconError("noun index entry '" + lemma +
                           "' points to missing synset " + id);
      }
    }
  }
  // Iterative three-colour DFS for cycle detection.
  std::unordered_map<std::string, int> colour;
  for (const auto& [root, _] : nouns_) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<const std::string*, std::size_t>> stack;
    stack.emplace_back(&root, 0);
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      const auto& hyps = nouns_.at(*id).hypernyms;
      if (next < hyps.size()) {
        const std::string& h = hyps[next++];
        int& c = colour[h];
        if (c == 1) {
          throw LexiconError("noun hypernym cycle through synset " + h);
        }
        if (c == 0) {
          c = 1;
          stack.emplace_back(&h, 0);
        }
      } else {
        colour[*id] = 2;
        stack.pop_back();
      }
    }
  }
  finalized_ = true;
  closure_size_.clear();
  for (const auto& [id, _] : nouns_) {
    closure_size_[id] = hypernym_closure(id).size();
  }
  r_max_ = 0;
  for (const auto& [_, rel] : adj_index_) r_max_ = std::max(r_max_, rel.total());
}

void WordNetStore::require_finalized() const {
  if (!finalized_) throw LexiconError("WordNetStore queried before finalize()");
}

std::vector<std::string> WordNetStore::hypernym_closure(
    const std::string& id) const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::vector<std::string> frontier = {id};
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& s : frontier) {
      auto it = nouns_.find(s);
      if (it == nouns_.end()) continue;
      for (const auto& h : it->second.hypernyms) {
        if (seen.insert(h).second) {
          out.push_back(h);
          next.push_back(h);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

const std::vector<std::string>* WordNetStore::noun_senses(
    std::string_view lemma) const {
  auto it = noun_index_.find(key_of(lemma));
  if (it == noun_index_.end() || it->second.empty()) return nullptr;
  return &it->second;
}

std::optional<std::size_t> WordNetStore::hypernym_count(
    std::string_view lemma) const {
  require_finalized();
  const auto* senses = noun_senses(lemma);
  if (senses == nullptr) return std::nullopt;
  return std::min(closure_size_.at(senses->front()), kMaxDepth);
}

bool WordNetStore::has_adjective(std::string_view lemma) const {
  return adj_index_.count(key_of(lemma)) > 0;
}

std::optional<AdjRelations> WordNetStore::adjective_entry(
    std::string_view lemma) const {
  auto it = adj_index_.find(key_of(lemma));
  if (it == adj_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> WordNetStore::adjective_relations(
    std::string_view lemma) const {
  require_finalized();
  auto e = adjective_entry(lemma);
  if (!e) return std::nullopt;
  return e->total();
}

// ---------------------------------------------------------------------------
// Princeton database files

namespace {

struct Pointer {
  std::string symbol;
  std::string offset;
  char pos;
  int source;  // 1-based word index in this synset, 0 = whole synset
};

struct DataRecord {
  std::string offset;
  char ss_type;
  std::vector<std::string> words;
  std::vector<Pointer> pointers;
};

std::size_t parse_hex(const std::string& s, const std::string& where) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw LexiconError(where + ": bad hex field '" + s + "'");
  }
  return v;
}

std::size_t parse_dec(const std::string& s, const std::string& where) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw LexiconError(where + ": bad count field '" + s + "'");
  }
  return v;
}

bool valid_offset(const std::string& s) {
  return s.size() == 8 &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string strip_marker(std::string w) {
  // Adjective syntactic markers: word(a), word(p), word(ip).
  if (w.size() > 3 && w.back() == ')') {
    auto open = w.rfind('(');
    if (open != std::string::npos) w.erase(open);
  }
  return w;
}

std::string read_db(const std::filesystem::path& dir, const char* name) {
  auto p = dir / name;
  if (!std::filesystem::exists(p)) {
    throw LexiconError("missing WordNet file: " + p.string());
  }
  return read_file(p.string());
}

std::map<std::string, DataRecord> parse_data(const std::string& content,
                                             const std::string& file) {
  std::map<std::string, DataRecord> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    std::string_view line(content.data() + pos, end - pos);
    std::size_t line_start = pos;
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.starts_with("  ")) continue;
    std::string where = file + " line " + std::to_string(line_no);
    auto bar = line.find(" | ");
    auto fields = split_whitespace(line.substr(0, bar));
    if (fields.size() < 4) throw LexiconError(where + ": truncated synset");
    DataRecord rec;
    rec.offset = fields[0];
    if (!valid_offset(rec.offset)) {
      throw LexiconError(where + ": malformed synset offset '" + rec.offset + "'");
    }
    if (parse_dec(rec.offset, where) != line_start) {
      throw LexiconError(where + ": synset offset " + rec.offset +
                         " does not match byte position " +
                         std::to_string(line_start));
    }
    if (fields[2].size() != 1) throw LexiconError(where + ": bad ss_type");
    rec.ss_type = fields[2][0];
    std::size_t i = 3;
    std::size_t w_cnt = parse_hex(fields[i++], where);
    for (std::size_t w = 0; w < w_cnt; ++w) {
      if (i + 1 >= fields.size()) throw LexiconError(where + ": truncated word list");
      rec.words.push_back(strip_marker(fields[i]));
      i += 2;
    }
    if (i >= fields.size()) throw LexiconError(where + ": missing pointer count");
    std::size_t p_cnt = parse_dec(fields[i++], where);
    for (std::size_t k = 0; k < p_cnt; ++k) {
      if (i + 3 >= fields.size()) throw LexiconError(where + ": truncated pointer");
      Pointer ptr;
      ptr.symbol = fields[i];
      ptr.offset = fields[i + 1];
      if (!valid_offset(ptr.offset)) {
        throw LexiconError(where + ": malformed pointer offset '" + ptr.offset + "'");
      }
      if (fields[i + 2].size() != 1) throw LexiconError(where + ": bad pointer pos");
      ptr.pos = fields[i + 2][0];
      const std::string& st = fields[i + 3];
      if (st.size() != 4) throw LexiconError(where + ": bad source/target field");
      ptr.source = static_cast<int>(parse_hex(st.substr(0, 2), where));
      rec.pointers.push_back(std::move(ptr));
      i += 4;
    }
    out.emplace(rec.offset, std::move(rec));
  }
  return out;
}

struct IndexEntry {
  std::string lemma;
  std::vector<std::string> offsets;
};

std::vector<IndexEntry> parse_index(const std::string& content,
                                    const std::string& file) {
  std::vector<IndexEntry> out;
  std::size_t line_no = 0;
  for (const auto& line : split(content, '\n')) {
    ++line_no;
    if (line.empty() || line.starts_with("  ")) continue;
    std::string where = file + " line " + std::to_string(line_no);
    auto f = split_whitespace(line);
    if (f.size() < 4) throw LexiconError(where + ": truncated index entry");
    IndexEntry e;
    e.lemma = f[0];
    std::size_t synset_cnt = parse_dec(f[2], where);
    std::size_t p_cnt = parse_dec(f[3], where);
    std::size_t first = 4 + p_cnt + 2;
    if (f.size() != first + synset_cnt) {
      throw LexiconError(where + ": expected " + std::to_string(synset_cnt) +
                         " synset offsets");
    }
    for (std::size_t i = first; i < f.size(); ++i) {
      if (!valid_offset(f[i])) {
        throw LexiconError(where + ": malformed synset offset '" + f[i] + "'");
      }
      e.offsets.push_back(f[i]);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

WordNetStore load_wordnet(const std::string& dir) {
  std::filesystem::path d(dir);
  std::string index_noun = read_db(d, "index.noun");
  std::string data_noun = read_db(d, "data.noun");
  std::string index_adj = read_db(d, "index.adj");
  std::string data_adj = read_db(d, "data.adj");

  WordNetStore store;
  auto nouns = parse_data(data_noun, "data.noun");
  for (const auto& [off, rec] : nouns) {
    std::vector<std::string> hyps;
    for (const auto& p : rec.pointers) {
      if (p.symbol != "@" && p.symbol != "@i") continue;
      if (p.pos != 'n') {
        throw LexiconError("data.noun synset " + off +
                           " has a hypernym pointer to POS '" +
                           std::string(1, p.pos) + "'");
      }
      if (!nouns.count(p.offset)) {
        throw LexiconError("data.noun synset " + off + " points to missing " +
                           p.offset);
      }
      hyps.push_back("n" + p.offset);
    }
    store.add_noun_synset("n" + off, rec.words, std::move(hyps));
  }
  for (const auto& e : parse_index(index_noun, "index.noun")) {
    for (const auto& off : e.offsets) {
      if (!nouns.count(off)) {
        throw LexiconError("index.noun entry '" + e.lemma +
                           "' points to missing synset " + off);
      }
      store.add_noun_sense(e.lemma, "n" + off);
    }
  }

  auto adjs = parse_data(data_adj, "data.adj");
  for (const auto& e : parse_index(index_adj, "index.adj")) {
    AdjRelations rel;
    std::string key = WordNetStore::key_of(e.lemma);
    for (const auto& off : e.offsets) {
      auto it = adjs.find(off);
      if (it == adjs.end()) {
        throw LexiconError("index.adj entry '" + e.lemma +
                           "' points to missing synset " + off);
      }
      const auto& rec = it->second;
      int word_index = 0;
      for (std::size_t w = 0; w < rec.words.size(); ++w) {
        if (WordNetStore::key_of(rec.words[w]) == key) {
          word_index = static_cast<int>(w + 1);
          break;
        }
      }
      rel.sense_count += 1;
      rel.synonym_count += rec.words.empty() ? 0 : rec.words.size() - 1;
      for (const auto& p : rec.pointers) {
        if (p.symbol == "&") {
          rel.similar_count += 1;
        } else if (p.symbol == "!" && (p.source == 0 || p.source == word_index)) {
          rel.antonym_count += 1;
        }
      }
    }
    store.set_adjective(e.lemma, rel);
  }
  store.finalize();
  return store;
}

}  // namespace lebkit
