#include "lebkit/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace lebkit {

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::Noun: return "Noun";
    case Pos::Verb: return "Verb";
    case Pos::Adjective: return "Adjective";
    case Pos::Adverb: return "Adverb";
    case Pos::Other: return "Other";
  }
  return "Other";
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || cp == 0x00A0 ||
         (cp >= 0x2000 && cp <= 0x200B) || cp == 0x3000 || cp == 0x202F;
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) {
    return !(cp >= U'a' && cp <= U'z') && !(cp >= U'A' && cp <= U'Z') &&
           !(cp >= U'0' && cp <= U'9') && !is_space_cp(cp);
  }
  switch (cp) {
    case 0x2018: case 0x2019: case 0x201C: case 0x201D: case 0x2013:
    case 0x2014: case 0x2026: case 0x00AB: case 0x00BB: case 0x00BF:
    case 0x00A1: case 0x2022: case 0x00B7:
      return true;
    default:
      return false;
  }
}

bool is_word_cp(char32_t cp) { return !is_space_cp(cp) && !is_punct_cp(cp); }
bool is_digit_cp(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

std::string encode(const std::u32string& s) {
  std::string out;
  for (char32_t cp : s) append_utf8(out, cp);
  return out;
}

void push_word(std::vector<std::string>& out, const std::u32string& word) {
  if (word.empty()) return;
  std::string w = encode(word);
  std::string lw = fold(w);
  if (lw.size() > 3 && lw.ends_with("n't")) {
    out.push_back(w.substr(0, w.size() - 3));
    out.push_back(w.substr(w.size() - 3));
    return;
  }
  static constexpr std::array<std::string_view, 6> kClitics = {
      "'s", "'re", "'ve", "'ll", "'m", "'d"};
  for (auto c : kClitics) {
    if (lw.size() > c.size() && lw.ends_with(c)) {
      out.push_back(w.substr(0, w.size() - c.size()));
      out.push_back(w.substr(w.size() - c.size()));
      return;
    }
  }
  out.push_back(std::move(w));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::u32string cps = decode_utf8(text);
  for (auto& cp : cps) {
    if (cp == 0x2018 || cp == 0x2019) cp = U'\'';
  }
  std::vector<std::string> out;
  std::u32string word;
  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    char32_t cp = cps[i];
    if (is_space_cp(cp)) {
      push_word(out, word);
      word.clear();
      ++i;
      continue;
    }
    if (is_word_cp(cp)) {
      word.push_back(cp);
      ++i;
      continue;
    }
    bool prev_word = !word.empty();
    bool next_word = i + 1 < n && is_word_cp(cps[i + 1]);
    bool keep = false;
    if ((cp == U'-' || cp == U'\'') && prev_word && next_word) {
      keep = true;
    } else if ((cp == U'.' || cp == U',' || cp == U':') && prev_word &&
               is_digit_cp(word.back()) && i + 1 < n &&
               is_digit_cp(cps[i + 1])) {
      keep = true;
    }
    if (keep) {
      word.push_back(cp);
      ++i;
      continue;
    }
    push_word(out, word);
    word.clear();
    std::size_t j = i;
    while (j < n && cps[j] == cp) ++j;
    out.push_back(encode(cps.substr(i, j - i)));
    i = j;
  }
  push_word(out, word);
  return out;
}

// ---------------------------------------------------------------------------
// Lemmatizer

namespace {

using StringMap = std::unordered_map<std::string_view, std::string_view>;

const StringMap& verb_exceptions() {
  static const StringMap m = {
      {"am", "be"}, {"is", "be"}, {"are", "be"}, {"was", "be"},
      {"were", "be"}, {"been", "be"}, {"being", "be"}, {"'m", "be"},
      {"'re", "be"}, {"has", "have"}, {"had", "have"}, {"having", "have"},
      {"'ve", "have"}, {"does", "do"}, {"did", "do"}, {"done", "do"},
      {"went", "go"}, {"gone", "go"}, {"goes", "go"}, {"made", "make"},
      {"took", "take"}, {"taken", "take"}, {"came", "come"}, {"saw", "see"},
      {"seen", "see"}, {"knew", "know"}, {"known", "know"}, {"got", "get"},
      {"gotten", "get"}, {"gave", "give"}, {"given", "give"},
      {"found", "find"}, {"thought", "think"}, {"told", "tell"},
      {"became", "become"}, {"left", "leave"}, {"felt", "feel"},
      {"brought", "bring"}, {"began", "begin"}, {"begun", "begin"},
      {"kept", "keep"}, {"held", "hold"}, {"wrote", "write"},
      {"written", "write"}, {"stood", "stand"}, {"heard", "hear"},
      {"meant", "mean"}, {"met", "meet"}, {"ran", "run"}, {"paid", "pay"},
      {"said", "say"}, {"sat", "sit"}, {"spoke", "speak"},
      {"spoken", "speak"}, {"led", "lead"}, {"grew", "grow"},
      {"grown", "grow"}, {"lost", "lose"}, {"fell", "fall"},
      {"fallen", "fall"}, {"sent", "send"}, {"built", "build"},
      {"understood", "understand"}, {"drew", "draw"}, {"drawn", "draw"},
      {"broke", "break"}, {"broken", "break"}, {"spent", "spend"},
      {"rose", "rise"}, {"risen", "rise"}, {"drove", "drive"},
      {"driven", "drive"}, {"bought", "buy"}, {"wore", "wear"},
      {"worn", "wear"}, {"chose", "choose"}, {"chosen", "choose"},
      {"sought", "seek"}, {"threw", "throw"}, {"thrown", "throw"},
      {"caught", "catch"}, {"dealt", "deal"}, {"won", "win"},
      {"ate", "eat"}, {"eaten", "eat"}, {"drank", "drink"},
      {"drunk", "drink"}, {"sang", "sing"}, {"sung", "sing"},
      {"swam", "swim"}, {"swum", "swim"}, {"taught", "teach"},
      {"fought", "fight"}, {"forgot", "forget"}, {"forgotten", "forget"},
      {"forgave", "forgive"}, {"forgiven", "forgive"}, {"hid", "hide"},
      {"hidden", "hide"}, {"slept", "sleep"}, {"sold", "sell"},
      {"shot", "shoot"}, {"shook", "shake"}, {"shaken", "shake"},
      {"stole", "steal"}, {"stolen", "steal"}, {"flew", "fly"},
      {"flown", "fly"}, {"froze", "freeze"}, {"frozen", "freeze"},
      {"woke", "wake"}, {"woken", "wake"}, {"hung", "hang"},
      {"bitten", "bite"}, {"blew", "blow"}, {"blown", "blow"},
      {"rode", "ride"}, {"ridden", "ride"}, {"rang", "ring"},
      {"rung", "ring"}, {"sank", "sink"}, {"sunk", "sink"},
      {"struck", "strike"}, {"swore", "swear"}, {"sworn", "swear"},
      {"tore", "tear"}, {"torn", "tear"}, {"bore", "bear"}, {"born", "bear"},
      {"beaten", "beat"}, {"bent", "bend"}, {"bled", "bleed"},
      {"bred", "breed"}, {"dug", "dig"}, {"fed", "feed"}, {"fled", "flee"},
      {"lent", "lend"}, {"lit", "light"}, {"stuck", "stick"},
      {"swept", "sweep"}, {"wept", "weep"}, {"knelt", "kneel"},
      {"leapt", "leap"}, {"dreamt", "dream"}, {"learnt", "learn"},
      {"burnt", "burn"}, {"spelt", "spell"}, {"dying", "die"},
      {"lying", "lie"}, {"tying", "tie"}, {"lay", "lie"}, {"lain", "lie"},
      {"ca", "can"}, {"wo", "will"}, {"'ll", "will"}, {"sha", "shall"},
      {"n't", "not"}, {"says", "say"}, {"does", "do"}};
  return m;
}

const StringMap& noun_exceptions() {
  static const StringMap m = {
      {"men", "man"}, {"women", "woman"}, {"children", "child"},
      {"feet", "foot"}, {"teeth", "tooth"}, {"geese", "goose"},
      {"mice", "mouse"}, {"lice", "louse"}, {"oxen", "ox"},
      {"wives", "wife"}, {"knives", "knife"}, {"lives", "life"},
      {"leaves", "leaf"}, {"wolves", "wolf"}, {"halves", "half"},
      {"shelves", "shelf"}, {"thieves", "thief"}, {"loaves", "loaf"},
      {"selves", "self"}, {"calves", "calf"}, {"elves", "elf"},
      {"criteria", "criterion"}, {"phenomena", "phenomenon"},
      {"analyses", "analysis"}, {"crises", "crisis"}, {"theses", "thesis"},
      {"cacti", "cactus"}, {"fungi", "fungus"}, {"alumni", "alumnus"},
      {"potatoes", "potato"}, {"tomatoes", "tomato"}, {"heroes", "hero"},
      {"echoes", "echo"}, {"businessmen", "businessman"},
      {"businesswomen", "businesswoman"}, {"policemen", "policeman"},
      {"firemen", "fireman"}, {"gentlemen", "gentleman"},
      {"salesmen", "salesman"}};
  return m;
}

const StringMap& adjective_exceptions() {
  static const StringMap m = {
      {"better", "good"}, {"best", "good"},   {"worse", "bad"},
      {"worst", "bad"},   {"farther", "far"}, {"further", "far"},
      {"farthest", "far"}, {"furthest", "far"}};
  return m;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool has_tag(const detail::LexiconEntry* e, Pos pos) {
  return e != nullptr &&
         (e->primary == pos || (e->has_alternate && e->alternate == pos));
}

bool known_as(std::string_view w, Pos pos) {
  return has_tag(detail::lookup_tag_lexicon(w), pos);
}

bool doubled_final(std::string_view s) {
  return s.size() >= 3 && s.back() == s[s.size() - 2] && !is_vowel(s.back()) &&
         s.back() != 'l' && s.back() != 's' && s.back() != 'z' &&
         s.back() != 'f';
}

// Short consonant-vowel-consonant stems usually lost a silent 'e'
// ("making" -> "mak" -> "make").
bool wants_silent_e(std::string_view s) {
  if (s.size() < 3 || s.size() > 4) return false;
  char c3 = s.back();
  char v = s[s.size() - 2];
  char c1 = s[s.size() - 3];
  return !is_vowel(c3) && c3 != 'w' && c3 != 'x' && c3 != 'y' &&
         is_vowel(v) && !is_vowel(c1);
}

// Picks the first candidate the lexicon knows as `pos`; otherwise applies
// the spelling heuristics to the plain stem.
std::string pick_stem(std::string_view stem, Pos pos, bool allow_e) {
  std::string s(stem);
  if (known_as(s, pos)) return s;
  if (allow_e && known_as(s + "e", pos)) return s + "e";
  if (doubled_final(s) && known_as(s.substr(0, s.size() - 1), pos)) {
    return s.substr(0, s.size() - 1);
  }
  if (doubled_final(s)) return s.substr(0, s.size() - 1);
  if (allow_e && wants_silent_e(s)) return s + "e";
  return s;
}

std::string lemmatize_noun(const std::string& w) {
  if (known_as(w, Pos::Noun) && !w.ends_with("s")) return w;
  auto n = w.size();
  std::string cand;
  if (n > 4 && w.ends_with("ies")) {
    cand = w.substr(0, n - 3) + "y";
  } else if (n > 3 && w.ends_with("es") &&
             (w.ends_with("sses") || w.ends_with("xes") ||
              w.ends_with("zes") || w.ends_with("ches") ||
              w.ends_with("shes"))) {
    cand = w.substr(0, n - 2);
  } else if (n > 3 && w.ends_with("s") && !w.ends_with("ss") &&
             !w.ends_with("us") && !w.ends_with("is")) {
    cand = w.substr(0, n - 1);
  } else {
    return w;
  }
  // Words like "politics" or "clothes" are lexicon entries in their own right.
  if (known_as(w, Pos::Noun) && !known_as(cand, Pos::Noun)) return w;
  return cand;
}

std::string lemmatize_verb(const std::string& w) {
  if (known_as(w, Pos::Verb)) return w;
  auto n = w.size();
  if (n > 4 && w.ends_with("ies")) return w.substr(0, n - 3) + "y";
  if (n > 4 && w.ends_with("ied")) return w.substr(0, n - 3) + "y";
  if (n > 4 && w.ends_with("ing")) {
    return pick_stem(std::string_view(w).substr(0, n - 3), Pos::Verb, true);
  }
  if (n > 3 && w.ends_with("ed")) {
    return pick_stem(std::string_view(w).substr(0, n - 2), Pos::Verb, true);
  }
  if (n > 3 && w.ends_with("es")) {
    std::string stem = w.substr(0, n - 2);
    if (known_as(stem, Pos::Verb)) return stem;
    if (known_as(w.substr(0, n - 1), Pos::Verb)) return w.substr(0, n - 1);
    if (stem.ends_with("s") || stem.ends_with("x") || stem.ends_with("z") ||
        stem.ends_with("ch") || stem.ends_with("sh") || stem.ends_with("o")) {
      return stem;
    }
    return w.substr(0, n - 1);
  }
  if (n > 2 && w.ends_with("s") && !w.ends_with("ss")) {
    return w.substr(0, n - 1);
  }
  return w;
}

std::string lemmatize_adjective(const std::string& w) {
  if (known_as(w, Pos::Adjective)) return w;
  auto n = w.size();
  for (std::string_view suf : {std::string_view("est"), std::string_view("er")}) {
    if (n <= suf.size() + 2 || !w.ends_with(suf)) continue;
    std::string stem = w.substr(0, n - suf.size());
    if (stem.ends_with("i")) {
      return stem.substr(0, stem.size() - 1) + "y";
    }
    return pick_stem(stem, Pos::Adjective, true);
  }
  return w;
}

}  // namespace

std::string lemmatize(std::string_view surface, Pos pos) {
  std::string w = fold(surface);
  if (w.empty()) return w;
  const StringMap* table = nullptr;
  switch (pos) {
    case Pos::Noun: table = &noun_exceptions(); break;
    case Pos::Verb: table = &verb_exceptions(); break;
    case Pos::Adjective: table = &adjective_exceptions(); break;
    default: break;
  }
  if (table != nullptr) {
    if (auto it = table->find(w); it != table->end()) {
      return std::string(it->second);
    }
  }
  switch (pos) {
    case Pos::Noun: return lemmatize_noun(w);
    case Pos::Verb: return lemmatize_verb(w);
    case Pos::Adjective: return lemmatize_adjective(w);
    default: {
      const auto& vx = verb_exceptions();
      if (auto it = vx.find(w); it != vx.end() &&
          (w == "n't" || w == "ca" || w == "wo" || w == "sha")) {
        return std::string(it->second);
      }
      return w;
    }
  }
}

// ---------------------------------------------------------------------------
// Tagger

namespace {

using WordSet = std::unordered_set<std::string_view>;

const WordSet kDeterminers = {"a", "an", "the", "this", "that", "these",
                              "those", "my", "your", "his", "her", "its",
                              "our", "their", "every", "each", "some", "any",
                              "no", "another", "many", "several", "few", "'s",
                              "whose", "all"};
const WordSet kSubjects = {"i", "you", "he", "she", "we", "they", "who",
                           "it", "people"};
const WordSet kVerbTriggers = {"to", "n't", "not", "can", "could", "will",
                               "would", "shall", "should", "may", "might",
                               "must", "do", "does", "did", "'ll", "'d",
                               "ca", "wo", "cannot"};
const WordSet kPrepositions = {"of", "in", "on", "at", "by", "for", "with",
                               "about", "from", "into", "through", "during",
                               "under", "over", "between", "among", "without",
                               "near", "across", "behind", "toward",
                               "towards", "upon", "within"};
const WordSet kCopulas = {"is", "am", "are", "was", "were", "be", "been",
                          "being", "'m", "'re", "seem", "seems", "seemed",
                          "feel", "feels", "felt", "become", "becomes",
                          "became", "remain", "remains", "remained",
                          "stay", "stays", "stayed"};
const WordSet kParticles = {"up", "out", "down", "off"};
const WordSet kSentenceEnd = {".", "!", "?", ":", ";", "\"", "...", "(",
                              "“", "'"};

struct Context {
  std::string_view prev;       // folded previous surface ("" at start)
  std::string_view prev2;      // folded surface two back
  std::optional<Pos> prev_tag;
  std::string_view next;       // folded next surface
  bool s_form = false;         // word is an -s inflection of the entry
};

bool punct_or_end(std::string_view next) {
  if (next.empty()) return true;
  if (kPrepositions.count(next)) return true;
  for (char c : next) {
    if (std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Pos resolve(const detail::LexiconEntry& e, const Context& ctx) {
  if (!e.has_alternate) return e.primary;
  auto both = [&](Pos a, Pos b) {
    return (e.primary == a && e.alternate == b) ||
           (e.primary == b && e.alternate == a);
  };
  const bool prev_adverb = ctx.prev_tag == Pos::Adverb;
  if (both(Pos::Noun, Pos::Verb)) {
    if (kDeterminers.count(ctx.prev) || ctx.prev_tag == Pos::Adjective ||
        kPrepositions.count(ctx.prev)) {
      return Pos::Noun;
    }
    if (kSubjects.count(ctx.prev) || kVerbTriggers.count(ctx.prev) ||
        prev_adverb) {
      return Pos::Verb;
    }
    if (ctx.prev_tag == Pos::Verb) return Pos::Noun;
    if (ctx.prev_tag == Pos::Noun && ctx.s_form) return Pos::Verb;
    return e.primary;
  }
  if (both(Pos::Adjective, Pos::Verb)) {
    if (kSubjects.count(ctx.prev) || kVerbTriggers.count(ctx.prev) ||
        (prev_adverb && !kCopulas.count(ctx.prev2))) {
      return Pos::Verb;
    }
    return Pos::Adjective;
  }
  if (both(Pos::Adjective, Pos::Noun)) {
    if (kDeterminers.count(ctx.prev) && punct_or_end(ctx.next)) {
      return Pos::Noun;
    }
    return e.primary;
  }
  if (both(Pos::Adjective, Pos::Adverb)) {
    if (kCopulas.count(ctx.prev) || (prev_adverb && kCopulas.count(ctx.prev2))) {
      return Pos::Adjective;
    }
    if (ctx.prev_tag == Pos::Verb || kParticles.count(ctx.prev)) {
      return Pos::Adverb;
    }
    return e.primary;
  }
  return e.primary;
}

bool is_number(std::string_view w) {
  bool digit = false;
  for (char c : w) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.' && c != ',' && c != ':' && c != '%' && c != '-') {
      return false;
    }
  }
  return digit;
}

bool is_punct_token(std::string_view w) {
  for (char32_t cp : decode_utf8(w)) {
    if (!is_punct_cp(cp)) return false;
  }
  return true;
}

struct SuffixRule {
  std::string_view suffix;
  Pos pos;
};

constexpr SuffixRule kSuffixRules[] = {
    {"ness", Pos::Noun},      {"ment", Pos::Noun},  {"tion", Pos::Noun},
    {"sion", Pos::Noun},      {"ity", Pos::Noun},   {"ism", Pos::Noun},
    {"ship", Pos::Noun},      {"hood", Pos::Noun},  {"ance", Pos::Noun},
    {"ence", Pos::Noun},      {"ist", Pos::Noun},   {"ly", Pos::Adverb},
    {"ous", Pos::Adjective},  {"ful", Pos::Adjective},
    {"less", Pos::Adjective}, {"able", Pos::Adjective},
    {"ible", Pos::Adjective}, {"ive", Pos::Adjective},
    {"al", Pos::Adjective},   {"ic", Pos::Adjective},
    {"ish", Pos::Adjective},  {"ese", Pos::Adjective},
    {"ize", Pos::Verb},       {"ise", Pos::Verb},   {"ify", Pos::Verb},
    {"ing", Pos::Verb},       {"ed", Pos::Verb},    {"er", Pos::Noun},
    {"or", Pos::Noun},
};

Pos tag_unknown(const std::string& w, const Context& ctx) {
  // Inflected forms of lexicon words.
  auto n = w.size();
  if (n > 3 && w.ends_with("s") && !w.ends_with("ss")) {
    std::string noun = lemmatize_noun(w);
    std::string verb = lemmatize_verb(w);
    const auto* e = detail::lookup_tag_lexicon(noun);
    if (e == nullptr) e = detail::lookup_tag_lexicon(verb);
    if (e != nullptr && (has_tag(e, Pos::Noun) || has_tag(e, Pos::Verb))) {
      Context c = ctx;
      c.s_form = true;
      Pos p = resolve(*e, c);
      if (p == Pos::Noun || p == Pos::Verb) return p;
      return has_tag(e, Pos::Noun) ? Pos::Noun : Pos::Verb;
    }
  }
  if ((n > 4 && w.ends_with("ing")) || (n > 3 && w.ends_with("ed"))) {
    if (known_as(lemmatize_verb(w), Pos::Verb)) return Pos::Verb;
  }
  if (n > 4 && (w.ends_with("er") || w.ends_with("est"))) {
    if (known_as(lemmatize_adjective(w), Pos::Adjective)) {
      return Pos::Adjective;
    }
  }
  if (n > 4 && w.ends_with("ly")) {
    std::string base = w.substr(0, n - 2);
    if (base.ends_with("i")) base = base.substr(0, base.size() - 1) + "y";
    if (known_as(base, Pos::Adjective)) return Pos::Adverb;
  }
  for (const auto& rule : kSuffixRules) {
    if (n > rule.suffix.size() + 1 && w.ends_with(rule.suffix)) {
      return rule.pos;
    }
  }
  return Pos::Noun;
}

bool capitalized(std::string_view s) {
  return !s.empty() && s[0] >= 'A' && s[0] <= 'Z';
}

}  // namespace

TaggedText pos_tag(const std::vector<std::string>& tokens) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  std::vector<std::string> folded;
  folded.reserve(tokens.size());
  for (const auto& t : tokens) folded.push_back(fold(t));

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& surface = tokens[i];
    const std::string& w = folded[i];
    Context ctx;
    if (i > 0) {
      ctx.prev = folded[i - 1];
      ctx.prev_tag = out.back().pos;
    }
    if (i > 1) ctx.prev2 = folded[i - 2];
    if (i + 1 < tokens.size()) ctx.next = folded[i + 1];
    const bool sentence_start = i == 0 || kSentenceEnd.count(ctx.prev) > 0;

    Pos pos;
    if (is_punct_token(w) || is_number(w)) {
      pos = Pos::Other;
    } else if (const auto* e = detail::lookup_tag_lexicon(w)) {
      pos = resolve(*e, ctx);
    } else if (verb_exceptions().count(w)) {
      pos = Pos::Verb;
    } else if (noun_exceptions().count(w)) {
      pos = Pos::Noun;
    } else if (adjective_exceptions().count(w)) {
      pos = Pos::Adjective;
    } else if (capitalized(surface) && !sentence_start) {
      pos = Pos::Noun;
    } else {
      pos = tag_unknown(w, ctx);
    }

    TaggedToken tok;
    tok.surface = surface;
    tok.pos = pos;
    tok.lemma = lemmatize(surface, pos);
    if (tok.lemma.empty()) tok.lemma = w.empty() ? surface : w;
    out.push_back(std::move(tok));
  }
  return TaggedText(std::move(out));
}

Pos pos_from_upos(std::string_view upos) {
  if (upos == "NOUN" || upos == "PROPN") return Pos::Noun;
  if (upos == "VERB") return Pos::Verb;
  if (upos == "ADJ") return Pos::Adjective;
  if (upos == "ADV") return Pos::Adverb;
  return Pos::Other;
}

TaggedText pos_tag_conllu(std::string_view conllu) {
  std::vector<TaggedToken> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= conllu.size()) {
    std::size_t end = conllu.find('\n', start);
    if (end == std::string_view::npos) end = conllu.size();
    std::string_view line = conllu.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || line.front() == '#') {
      if (end == conllu.size()) break;
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw ConllError(line_no, "expected 10 tab-separated columns, got " +
                                    std::to_string(cols.size()));
    }
    const std::string& id = cols[0];
    if (id.empty() || !std::isdigit(static_cast<unsigned char>(id[0]))) {
      throw ConllError(line_no, "malformed token id '" + id + "'");
    }
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) {
      continue;
    }
    if (cols[1].empty() || cols[3].empty()) {
      throw ConllError(line_no, "empty FORM or UPOS");
    }
    TaggedToken tok;
    tok.surface = cols[1];
    tok.pos = pos_from_upos(cols[3]);
    tok.lemma = cols[2] == "_" ? lemmatize(cols[1], tok.pos) : fold(cols[2]);
    if (tok.lemma.empty()) tok.lemma = fold(cols[1]);
    out.push_back(std::move(tok));
    if (end == conllu.size()) break;
  }
  return TaggedText(std::move(out));
}

NegationCues::NegationCues()
    : cues_{"not", "n't", "never", "no", "none", "nobody", "nothing",
            "neither", "nor", "cannot"} {}

NegationCues::NegationCues(std::set<std::string> cues) {
  for (const auto& c : cues) cues_.insert(fold(c));
}

bool NegationCues::contains(std::string_view surface) const {
  return cues_.count(fold(surface)) > 0;
}

TaggedText mark_negations(TaggedText text, const NegationCues& cues) {
  for (auto& tok : text.tokens()) {
    tok.is_negation_cue = cues.contains(tok.surface);
  }
  return text;
}

TaggedText analyze_text(std::string_view raw, const NegationCues& cues) {
  return mark_negations(pos_tag(tokenize(raw)), cues);
}

}  // namespace lebkit
