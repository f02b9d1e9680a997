#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lebkit/strings.hpp"

namespace lebkit {

class LexiconError : public Error {
 public:
  using Error::Error;
};

// Word and multiword concreteness ratings on the 1..5 scale. Keys are the
// case-folded tokenizer output joined by single spaces, so "Can't stand"
// is stored as "ca n't stand".
class ConcretenessLexicon {
 public:
  // Adds or replaces an entry. Throws LexiconError for ratings outside [1,5]
  // or expressions with no tokens. Returns false when an earlier entry was
  // overwritten.
  bool add(std::string_view expression, double rating);

  std::optional<double> unigram(std::string_view key) const;
  std::optional<double> multiword(std::string_view key) const;

  const std::unordered_map<std::string, double>& unigrams() const {
    return unigrams_;
  }
  const std::unordered_map<std::string, double>& multiwords() const {
    return multiwords_;
  }
  std::size_t max_mwe_len() const { return max_mwe_len_; }
  std::size_t size() const { return unigrams_.size() + multiwords_.size(); }

  const std::vector<std::string>& warnings() const { return warnings_; }
  void warn(std::string w) { warnings_.push_back(std::move(w)); }

  static std::string key_of(std::string_view expression);

 private:
  std::unordered_map<std::string, double> unigrams_;
  std::unordered_map<std::string, double> multiwords_;
  std::size_t max_mwe_len_ = 0;
  std::vector<std::string> warnings_;
};

// Reads delimited norms files (tab if the first line has a tab, else comma).
// A header row is recognised when its rating cell is not numeric; the word
// column is the first of word/expression/term/item, the rating column the
// first of conc.m/mean_c/rating/mean/concreteness. Without a header the
// first two columns are used. Later files win on key collisions.
ConcretenessLexicon load_concreteness(const std::vector<std::string>& paths);
void parse_concreteness(ConcretenessLexicon& lex, std::string_view content,
                        const std::string& source);

struct AdjRelations {
  std::size_t similar_count = 0;
  std::size_t synonym_count = 0;
  std::size_t antonym_count = 0;
  std::size_t sense_count = 0;

  std::size_t total() const {
    return similar_count + synonym_count + antonym_count + sense_count;
  }
  bool operator==(const AdjRelations&) const = default;
};

struct NounSynset {
  std::vector<std::string> lemmas;
  std::vector<std::string> hypernyms;  // '@' and '@i' targets
};

// Noun taxonomy plus per-lemma adjective relation counts. Populate with
// load_wordnet or the add_* calls followed by finalize(); queries require a
// finalized store, which is then immutable.
class WordNetStore {
 public:
  static constexpr std::size_t kMaxDepth = 19;

  void add_noun_synset(const std::string& id, std::vector<std::string> lemmas,
                       std::vector<std::string> hypernyms);
  // Appends `id` to the lemma's sense list (call order = sense order).
  void add_noun_sense(std::string_view lemma, const std::string& id);
  void set_adjective(std::string_view lemma, AdjRelations rel);

  // Validates references and acyclicity, then precomputes closure sizes and
  // the maximum adjective relation count. Throws LexiconError.
  void finalize();
  bool finalized() const { return finalized_; }

  // Size of the unique hypernym closure of the first noun sense, capped at
  // kMaxDepth. Absent when the lemma has no noun sense.
  std::optional<std::size_t> hypernym_count(std::string_view lemma) const;
  // Uncapped closure of one synset.
  std::vector<std::string> hypernym_closure(const std::string& id) const;

  std::optional<std::size_t> adjective_relations(std::string_view lemma) const;
  std::optional<AdjRelations> adjective_entry(std::string_view lemma) const;
  std::size_t max_adjective_relations() const { return r_max_; }

  const std::map<std::string, NounSynset>& noun_synsets() const {
    return nouns_;
  }
  const std::vector<std::string>* noun_senses(std::string_view lemma) const;
  bool has_adjective(std::string_view lemma) const;

  // Lemma keys are case-folded with spaces replaced by underscores.
  static std::string key_of(std::string_view lemma);

 private:
  void require_finalized() const;

  std::map<std::string, NounSynset> nouns_;
  std::unordered_map<std::string, std::vector<std::string>> noun_index_;
  std::unordered_map<std::string, AdjRelations> adj_index_;
  std::unordered_map<std::string, std::size_t> closure_size_;
  std::size_t r_max_ = 0;
  bool finalized_ = false;
};

// Reads index.noun, data.noun, index.adj and data.adj from a Princeton
// WordNet 3.x database directory. Throws LexiconError on missing files,
// bad offsets or cross-POS hypernym pointers.
WordNetStore load_wordnet(const std::string& dir);

}  // namespace lebkit
