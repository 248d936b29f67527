#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <ranges>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kwpos/document.hpp"
#include "kwpos/error.hpp"

namespace kwpos {

// Byte range [begin, end) into a raw string.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

// Word-token sequence with offsets back into the text it came from. Tokens
// are exact substrings of raw; the tokenizer never rewrites characters.
struct TokenizedText {
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<Span> offsets;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  std::span<const std::string> words() const noexcept { return tokens; }
};

namespace detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}
inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}
inline bool iends_with(std::string_view s, std::string_view suffix) {
  if (suffix.size() > s.size()) return false;
  const auto tail = s.substr(s.size() - suffix.size());
  return std::ranges::equal(tail, suffix, [](char a, char b) {
    return ascii_lower(a) == ascii_lower(b);
  });
}

inline constexpr std::string_view kRightSingleQuote = "\xE2\x80\x99";
inline constexpr std::string_view kLeftSingleQuote = "\xE2\x80\x98";
inline constexpr std::string_view kLeftDoubleQuote = "\xE2\x80\x9C";
inline constexpr std::string_view kRightDoubleQuote = "\xE2\x80\x9D";

// Characters that always form a token of their own.
inline std::size_t always_split_len(std::string_view s, std::size_t i) {
  static constexpr std::string_view kSingles = ";@#$%&?!()[]{}<>\"`";
  if (kSingles.find(s[i]) != std::string_view::npos) return 1;
  const auto rest = s.substr(i);
  if (rest.starts_with(kLeftDoubleQuote) || rest.starts_with(kRightDoubleQuote))
    return 3;
  return 0;
}

inline std::size_t leading_quote_len(std::string_view s) {
  if (s.starts_with('\'')) return 1;
  if (s.starts_with(kRightSingleQuote) || s.starts_with(kLeftSingleQuote))
    return 3;
  return 0;
}

inline std::size_t trailing_quote_len(std::string_view s) {
  if (s.ends_with('\'')) return 1;
  if (s.ends_with(kRightSingleQuote) || s.ends_with(kLeftSingleQuote)) return 3;
  return 0;
}

// Clitic suffixes split off a word, checked in order ("n't" before "'s").
inline constexpr std::array<std::string_view, 14> kCliticSuffixes = {
    "n't", "'s", "'m", "'d", "'ll", "'re", "'ve",
    "n\xE2\x80\x99" "t", "\xE2\x80\x99" "s", "\xE2\x80\x99" "m",
    "\xE2\x80\x99" "d", "\xE2\x80\x99" "ll", "\xE2\x80\x99" "re",
    "\xE2\x80\x99" "ve"};

inline bool is_clitic_form(std::string_view piece) {
  for (auto suffix : kCliticSuffixes)
    if (suffix.size() == piece.size() && iends_with(piece, suffix)) return true;
  return false;
}

inline std::size_t clitic_split_point(std::string_view piece) {
  for (auto suffix : kCliticSuffixes)
    if (piece.size() > suffix.size() && iends_with(piece, suffix))
      return piece.size() - suffix.size();
  return std::string_view::npos;
}

// Whole-word contractions split after their third character.
inline bool is_fused_contraction(std::string_view piece) {
  static constexpr std::array<std::string_view, 6> kFused = {
      "cannot", "gimme", "gonna", "gotta", "lemme", "wanna"};
  const auto lower = to_lower(piece);
  return std::ranges::find(kFused, lower) != kFused.end();
}

// A trailing period stays attached for initials ("J."), dotted
// abbreviations ("U.S.", "a.m.") and a short list of titles and months.
inline bool is_abbreviation(std::string_view piece) {
  const auto stem = piece.substr(0, piece.size() - 1);
  if (stem.empty()) return false;
  if (stem.size() == 1) return is_alpha(stem[0]);
  if (stem.find('.') != std::string_view::npos)
    return std::ranges::all_of(stem, [](char c) { return is_alpha(c) || c == '.'; });
  static const std::set<std::string, std::less<>> kKnown = {
      "mr",   "mrs",  "ms",  "dr",  "prof", "st",  "jr",  "sr",
      "mt",   "gen",  "gov", "sen", "rep",  "lt",  "col", "capt",
      "sgt",  "inc",  "ltd", "corp", "vs",  "jan", "feb", "apr",
      "aug",  "sept", "oct", "nov", "dec"};
  return kKnown.contains(to_lower(stem));
}

class TokenWriter {
 public:
  explicit TokenWriter(TokenizedText& out) : out_(out) {}

  void emit(std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    out_.tokens.emplace_back(std::string_view(out_.raw).substr(begin, end - begin));
    out_.offsets.push_back({begin, end});
  }

  std::string_view raw() const { return out_.raw; }

 private:
  TokenizedText& out_;
};

// Quotes, sentence periods and clitics on a piece free of other punctuation.
inline void split_word(TokenWriter& w, std::size_t b, std::size_t e) {
  const std::string_view s = w.raw();
  auto piece = [&] { return s.substr(b, e - b); };

  while (b < e) {
    const std::size_t q = leading_quote_len(piece());
    if (q == 0 || q == e - b || is_clitic_form(piece())) break;
    w.emit(b, b + q);
    b += q;
  }

  std::vector<Span> tail;
  while (e - b > 1) {
    if (s[e - 1] == '.' && !is_abbreviation(piece())) {
      tail.push_back({e - 1, e});
      --e;
      continue;
    }
    const std::size_t q = trailing_quote_len(piece());
    if (q != 0 && e - b > q) {
      tail.push_back({e - q, e});
      e -= q;
      continue;
    }
    break;
  }

  if (is_fused_contraction(piece())) {
    w.emit(b, b + 3);
    w.emit(b + 3, e);
  } else if (const auto cut = clitic_split_point(piece());
             cut != std::string_view::npos) {
    split_word(w, b, b + cut);  // the stem may end in a quote or period
    w.emit(b + cut, e);
  } else {
    w.emit(b, e);
  }

  for (auto it = tail.rbegin(); it != tail.rend(); ++it) w.emit(it->begin, it->end);
}

// Dash and dot runs, and commas/colons except between digits ("1,000",
// "12:30").
inline void split_segment(TokenWriter& w, std::size_t b, std::size_t e) {
  const std::string_view s = w.raw();
  std::size_t piece = b;
  std::size_t i = b;
  while (i < e) {
    const char c = s[i];
    if ((c == '-' || c == '.') && i + 1 < e && s[i + 1] == c) {
      std::size_t j = i;
      while (j < e && s[j] == c) ++j;
      split_word(w, piece, i);
      w.emit(i, j);
      i = piece = j;
      continue;
    }
    if (c == ',' || c == ':') {
      const bool numeric =
          i > b && is_digit(s[i - 1]) && i + 1 < e && is_digit(s[i + 1]);
      if (!numeric) {
        if (piece < i) split_word(w, piece, i);
        w.emit(i, i + 1);
        i = piece = i + 1;
        continue;
      }
    }
    ++i;
  }
  if (piece < e) split_word(w, piece, e);
}

inline void split_chunk(TokenWriter& w, std::size_t b, std::size_t e) {
  const std::string_view s = w.raw();
  std::size_t segment = b;
  std::size_t i = b;
  while (i < e) {
    if (const std::size_t len = always_split_len(s, i); len != 0) {
      if (segment < i) split_segment(w, segment, i);
      w.emit(i, i + len);
      i = segment = i + len;
    } else {
      ++i;
    }
  }
  if (segment < e) split_segment(w, segment, e);
}

}  // namespace detail

/// Splits raw text into Treebank-style word tokens.
///
/// Whitespace separates chunks; inside a chunk, brackets, double quotes and
/// `;@#$%&?!` are always split, commas and colons are split unless they sit
/// between digits, `--` and `...` runs become single tokens, a final period
/// is detached unless the word is an abbreviation, single quotes are peeled
/// from word edges, and the clitics 's 'm 'd 'll 're 've n't are split off.
/// Hyphenated words stay whole. Chunks are tokenized independently, so
/// joining tokens with single spaces and re-tokenizing reproduces them.
///
/// Bytes >= 0x80 are treated as word characters, apart from the curly
/// quotes U+2018, U+2019, U+201C, U+201D.
inline TokenizedText tokenize_words(std::string raw) {
  TokenizedText out;
  out.raw = std::move(raw);
  detail::TokenWriter writer(out);
  const std::string_view s = out.raw;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && detail::is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !detail::is_space(s[i])) ++i;
    if (start < i) detail::split_chunk(writer, start, i);
  }
  return out;
}

inline std::string join_words(std::span<const std::string> words) {
  std::string out;
  for (const auto& word : words) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

// Splits on whitespace only; the inverse of join_words for tokenizer output.
inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && detail::is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !detail::is_space(s[i])) ++i;
    if (start < i) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

enum class WordListKind { Stopword, Frequent };

// Lowercased word set with case-insensitive membership. Frequent lists also
// record what they were built from.
class WordList {
 public:
  WordList() = default;

  template <std::ranges::input_range R>
  WordList(WordListKind kind, R&& words, std::string source = {},
           std::optional<std::size_t> cutoff = std::nullopt)
      : kind_(kind), source_(std::move(source)), cutoff_(cutoff) {
    for (const auto& w : words) entries_.insert(detail::to_lower(w));
  }

  WordList(WordListKind kind, std::initializer_list<std::string_view> words)
      : kind_(kind) {
    for (auto w : words) entries_.insert(detail::to_lower(w));
  }

  bool contains(std::string_view word) const {
    return entries_.contains(detail::to_lower(word));
  }

  WordListKind kind() const noexcept { return kind_; }
  const std::string& source() const noexcept { return source_; }
  std::optional<std::size_t> cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::set<std::string, std::less<>>& entries() const noexcept {
    return entries_;
  }

 private:
  WordListKind kind_ = WordListKind::Stopword;
  std::set<std::string, std::less<>> entries_;
  std::string source_;
  std::optional<std::size_t> cutoff_;
};

// The stop and frequent lists used together by candidate filtering.
struct WordLists {
  WordList stopwords;
  WordList frequent;
};

/// Built-in English stoplist: the NLTK English stopword list (179 entries),
/// plus the clitic tokens and standalone punctuation tokens this tokenizer
/// emits.
inline const WordList& default_stopwords() {
  static const WordList list(
      WordListKind::Stopword,
      {"i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
       "you're", "you've", "you'll", "you'd", "your", "yours", "yourself",
       "yourselves", "he", "him", "his", "himself", "she", "she's", "her",
       "hers", "herself", "it", "it's", "its", "itself", "they", "them",
       "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
       "that", "that'll", "these", "those", "am", "is", "are", "was", "were",
       "be", "been", "being", "have", "has", "had", "having", "do", "does",
       "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because",
       "as", "until", "while", "of", "at", "by", "for", "with", "about",
       "against", "between", "into", "through", "during", "before", "after",
       "above", "below", "to", "from", "up", "down", "in", "out", "on", "off",
       "over", "under", "again", "further", "then", "once", "here", "there",
       "when", "where", "why", "how", "all", "any", "both", "each", "few",
       "more", "most", "other", "some", "such", "no", "nor", "not", "only",
       "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
       "just", "don", "don't", "should", "should've", "now", "d", "ll", "m",
       "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't",
       "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn",
       "hasn't", "haven", "haven't", "isn", "isn't", "ma", "mightn",
       "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't",
       "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won",
       "won't", "wouldn", "wouldn't",
       // clitics
       "'s", "n't", "'m", "'d", "'ll", "'re", "'ve",
       // punctuation
       ".", ",", ";", ":", "!", "?", "'", "\"", "`", "(", ")", "[", "]", "{",
       "}", "<", ">", "-", "--", "...", "&", "@", "#", "$", "%",
       "\xE2\x80\x98", "\xE2\x80\x99", "\xE2\x80\x9C", "\xE2\x80\x9D"});
  return list;
}

inline bool is_stopword(std::string_view word, const WordList& list) {
  return list.contains(word);
}

inline bool is_frequent(std::string_view word, const WordList& list) {
  return list.contains(word);
}

/// Top-N most frequent lowercased tokens over the target texts, ties broken
/// lexicographically.
template <std::ranges::input_range R>
  requires std::convertible_to<std::ranges::range_reference_t<R>, const Document&>
WordList build_frequent_word_list(R&& corpus, std::size_t top_n,
                                  std::string source = {}) {
  std::unordered_map<std::string, std::size_t> counts;
  std::size_t docs = 0;
  for (const Document& doc : corpus) {
    ++docs;
    for (const auto& token : tokenize_words(doc.target).tokens)
      ++counts[detail::to_lower(token)];
  }
  if (docs == 0) throw Error("empty corpus");

  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(),
                                                          counts.end());
  const auto keep = std::min(top_n, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                    ranked.end(), [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                    });
  ranked.resize(keep);
  return WordList(WordListKind::Frequent,
                  ranked | std::views::keys, std::move(source), top_n);
}

/// Reads a word list: UTF-8, one word per line, lines starting with '#' are
/// comments, and a literal '#' word is written as "\#".
inline WordList read_word_list(std::istream& in, WordListKind kind,
                               std::string source = {}) {
  std::vector<std::string> words;
  std::optional<std::size_t> cutoff;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string_view word = std::string_view(line).substr(b, e - b + 1);
    if (word.starts_with('#')) {
      if (auto at = word.find("cutoff="); at != std::string_view::npos)
        cutoff = std::stoul(std::string(word.substr(at + 7)));
      continue;
    }
    if (word.starts_with("\\#")) word.remove_prefix(1);
    words.emplace_back(word);
  }
  return WordList(kind, words, std::move(source), cutoff);
}

inline WordList load_word_list(const std::string& path, WordListKind kind) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open word list: " + path);
  return read_word_list(in, kind, path);
}

inline void write_word_list(std::ostream& out, const WordList& list) {
  out << "# kind=" << (list.kind() == WordListKind::Frequent ? "frequent" : "stopword")
      << '\n';
  if (!list.source().empty()) out << "# source=" << list.source() << '\n';
  if (list.cutoff()) out << "# cutoff=" << *list.cutoff() << '\n';
  for (const auto& w : list.entries()) {
    if (w.starts_with('#')) out << '\\';
    out << w << '\n';
  }
}

}  // namespace kwpos
