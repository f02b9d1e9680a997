#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lebkit/strings.hpp"

namespace lebkit {

enum class Pos { Noun, Verb, Adjective, Adverb, Other };

std::string_view to_string(Pos pos);

struct TaggedToken {
  std::string surface;
  std::string lemma;  // case-folded citation form, never empty
  Pos pos = Pos::Other;
  bool is_negation_cue = false;

  bool operator==(const TaggedToken&) const = default;
};

class TaggedText {
 public:
  TaggedText() = default;
  explicit TaggedText(std::vector<TaggedToken> tokens)
      : tokens_(std::move(tokens)) {}

  const std::vector<TaggedToken>& tokens() const { return tokens_; }
  std::vector<TaggedToken>& tokens() { return tokens_; }
  std::size_t n_tokens() const { return tokens_.size(); }

  bool operator==(const TaggedText&) const = default;

 private:
  std::vector<TaggedToken> tokens_;
};

class ConllError : public Error {
 public:
  ConllError(std::size_t line, const std::string& what)
      : Error("CoNLL-U line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Splits on whitespace and punctuation. "n't" and the clitics 's 're 've 'll
// 'm 'd become their own tokens ("can't" -> "ca" "n't"); typographic
// apostrophes are normalized to ASCII. Punctuation runs of one character
// ("...") stay together.
std::vector<std::string> tokenize(std::string_view text);

// Citation form: irregular exception table first, then suffix stripping for
// the given POS, validated against the bundled lexicon where possible.
std::string lemmatize(std::string_view surface, Pos pos);

// Lexicon + suffix-rule tagger over surface tokens. Fills lemmas.
TaggedText pos_tag(const std::vector<std::string>& tokens);

// Parses pre-tagged CoNLL-U (FORM, LEMMA, UPOS columns). Multiword-range and
// empty-node lines are skipped along with '#' comments. Sentences are
// concatenated in file order.
TaggedText pos_tag_conllu(std::string_view conllu);

Pos pos_from_upos(std::string_view upos);

class NegationCues {
 public:
  // not, n't, never, no, none, nobody, nothing, neither, nor, cannot
  NegationCues();
  explicit NegationCues(std::set<std::string> cues);

  bool contains(std::string_view surface) const;
  const std::set<std::string>& cues() const { return cues_; }

 private:
  std::set<std::string> cues_;
};

// Sets is_negation_cue exactly for tokens whose folded surface is a cue.
TaggedText mark_negations(TaggedText text,
                          const NegationCues& cues = NegationCues());

// tokenize -> pos_tag -> mark_negations.
TaggedText analyze_text(std::string_view raw,
                        const NegationCues& cues = NegationCues());

namespace detail {

struct LexiconEntry {
  Pos primary = Pos::Noun;
  Pos alternate = Pos::Noun;
  bool has_alternate = false;
};

// Bundled word -> most-frequent coarse tag table (lower-case keys).
const LexiconEntry* lookup_tag_lexicon(std::string_view word);
std::size_t tag_lexicon_size();

}  // namespace detail

}  // namespace lebkit
