#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kwpos/error.hpp"
#include "kwpos/random.hpp"
#include "kwpos/tokenizer.hpp"

namespace kwpos {

// Relative keyword position quantized to 10% units: 0, 10, ..., 90.
class PositionBucket {
 public:
  static constexpr int kStep = 10;
  static constexpr int kMax = 90;

  constexpr PositionBucket() = default;
  explicit PositionBucket(int percent) : percent_(percent) {
    if (percent < 0 || percent > kMax || percent % kStep != 0)
      throw Error("invalid position bucket " + std::to_string(percent));
  }

  constexpr int percent() const noexcept { return percent_; }

  friend constexpr auto operator<=>(PositionBucket, PositionBucket) = default;

 private:
  int percent_ = 0;
};

// Text length quantized to 5-word units; 50 stands for 50-54 words.
class LengthBucket {
 public:
  static constexpr int kStep = 5;

  constexpr LengthBucket() = default;
  explicit LengthBucket(int words) : words_(words) {
    if (words < 0 || words % kStep != 0)
      throw Error("invalid length bucket " + std::to_string(words));
  }

  constexpr int words() const noexcept { return words_; }

  friend constexpr auto operator<=>(LengthBucket, LengthBucket) = default;

 private:
  int words_ = 0;
};

// A 1-3 word phrase of the target and where it sits, [begin, end) in words.
struct KeywordCandidate {
  std::vector<std::string> phrase;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const KeywordCandidate&, const KeywordCandidate&) = default;
};

struct Keyword {
  std::vector<std::string> phrase;
  std::optional<PositionBucket> position;

  friend bool operator==(const Keyword&, const Keyword&) = default;
};

struct ControlSpec {
  std::optional<LengthBucket> length;
  std::vector<Keyword> keywords;

  friend bool operator==(const ControlSpec&, const ControlSpec&) = default;
};

struct SamplingConfig {
  int max_keywords = 3;
  double position_dropout = 0.10;
  double length_dropout = 0.10;
};

inline constexpr std::size_t kMaxPhraseWords = 3;

// True when needle occurs as a contiguous run inside haystack (equality
// included).
inline bool is_contiguous_subsequence(std::span<const std::string> needle,
                                      std::span<const std::string> haystack) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return !std::ranges::search(haystack, needle).empty();
}

inline bool phrases_nested(std::span<const std::string> a,
                           std::span<const std::string> b) {
  return is_contiguous_subsequence(a, b) || is_contiguous_subsequence(b, a);
}

// Two candidates may be chosen together when their spans are disjoint and
// neither phrase contains the other.
inline bool compatible(const KeywordCandidate& a, const KeywordCandidate& b) {
  const bool overlap = a.begin < b.end && b.begin < a.end;
  return !overlap && !phrases_nested(a.phrase, b.phrase);
}

/// Every contiguous 1-, 2- and 3-gram whose first word is neither a stop word
/// nor a frequent word, ordered by start index then by length.
inline std::vector<KeywordCandidate> extract_keyword_candidates(
    const TokenizedText& target, const WordList& stoplist,
    const WordList& frequentlist) {
  std::vector<KeywordCandidate> out;
  const auto& tokens = target.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (stoplist.contains(tokens[i]) || frequentlist.contains(tokens[i])) continue;
    for (std::size_t len = 1; len <= kMaxPhraseWords && i + len <= tokens.size(); ++len) {
      out.push_back({{tokens.begin() + static_cast<std::ptrdiff_t>(i),
                      tokens.begin() + static_cast<std::ptrdiff_t>(i + len)},
                     i,
                     i + len});
    }
  }
  return out;
}

inline std::vector<KeywordCandidate> extract_keyword_candidates(
    const TokenizedText& target, const WordLists& lists) {
  return extract_keyword_candidates(target, lists.stopwords, lists.frequent);
}

inline PositionBucket quantize_position(std::size_t start_word_index,
                                        std::size_t total_words) {
  if (total_words == 0) throw Error("empty text");
  if (start_word_index >= total_words)
    throw Error("word index " + std::to_string(start_word_index) +
                " out of range for " + std::to_string(total_words) + " words");
  const auto tenths = (10 * start_word_index) / total_words;
  return PositionBucket(static_cast<int>(std::min<std::size_t>(tenths, 9)) * 10);
}

inline LengthBucket quantize_length(std::size_t total_words) {
  return LengthBucket(static_cast<int>(total_words / 5 * 5));
}

// Throws if the spec breaks the ControlSpec invariants.
inline void validate(const ControlSpec& spec, int max_keywords = 3) {
  if (std::cmp_greater(spec.keywords.size(), max_keywords))
    throw Error("too many keywords: " + std::to_string(spec.keywords.size()));
  for (std::size_t i = 0; i < spec.keywords.size(); ++i) {
    if (spec.keywords[i].phrase.empty()) throw Error("empty keyword phrase");
    for (std::size_t j = 0; j < i; ++j)
      if (phrases_nested(spec.keywords[i].phrase, spec.keywords[j].phrase))
        throw Error("keyword \"" + join_words(spec.keywords[i].phrase) +
                    "\" nests with \"" + join_words(spec.keywords[j].phrase) + "\"");
  }
}

/// Draws a training-time control spec.
///
/// The keyword count is uniform over 0..max_keywords. Candidates are visited
/// in a seeded shuffled order and taken when compatible with everything
/// already taken. Each position, and the length, is then dropped with its
/// configured probability. Draw order is fixed: count, shuffle, one position
/// draw per chosen keyword, length draw.
inline ControlSpec sample_control_spec(const TokenizedText& target,
                                       std::span<const KeywordCandidate> candidates,
                                       Rng& rng, const SamplingConfig& config = {}) {
  const auto k = static_cast<std::size_t>(
      rng.uniform_below(static_cast<std::uint64_t>(config.max_keywords) + 1));

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order.begin(), order.end());

  std::vector<const KeywordCandidate*> chosen;
  for (std::size_t idx : order) {
    if (chosen.size() == k) break;
    const auto& cand = candidates[idx];
    if (std::ranges::all_of(chosen, [&](const auto* c) { return compatible(*c, cand); }))
      chosen.push_back(&cand);
  }

  ControlSpec spec;
  for (const auto* c : chosen) {
    Keyword kw{c->phrase, std::nullopt};
    if (!rng.bernoulli(config.position_dropout))
      kw.position = quantize_position(c->begin, target.size());
    spec.keywords.push_back(std::move(kw));
  }
  if (!rng.bernoulli(config.length_dropout)) spec.length = quantize_length(target.size());
  return spec;
}

/// Renders the control-token string, e.g.
/// "[LENGTH50] [SEP] two dogs [POSITION20]".
inline std::string serialize_control(const ControlSpec& spec) {
  std::vector<std::string> parts;
  if (spec.length) parts.push_back("[LENGTH" + std::to_string(spec.length->words()) + "]");
  for (const auto& kw : spec.keywords) {
    parts.emplace_back("[SEP]");
    parts.insert(parts.end(), kw.phrase.begin(), kw.phrase.end());
    if (kw.position)
      parts.push_back("[POSITION" + std::to_string(kw.position->percent()) + "]");
  }
  return join_words(parts);
}

namespace detail {

inline std::optional<int> parse_bracket_number(std::string_view element,
                                               std::string_view name) {
  const std::size_t head = name.size() + 1;
  if (element.size() <= head + 1 || !element.starts_with('[') ||
      element.substr(1, name.size()) != name || !element.ends_with(']'))
    return std::nullopt;
  const auto digits = element.substr(head, element.size() - head - 1);
  if (digits.empty() || digits.size() > 6 ||
      !std::ranges::all_of(digits, [](char c) { return is_digit(c); }))
    return std::nullopt;
  int value = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), value);
  return value;
}

}  // namespace detail

/// Inverse of serialize_control. Elements may be separated by any run of
/// whitespace. Any element starting with '[' must be one of the special
/// tokens.
inline ControlSpec parse_control(std::string_view s) {
  ControlSpec spec;
  bool in_keyword = false;      // a [SEP] has been seen
  bool keyword_closed = false;  // current keyword already has its position
  std::size_t sep_offset = 0;
  std::size_t i = 0;
  bool first = true;

  auto close_check = [&](std::size_t offset) {
    if (in_keyword && spec.keywords.back().phrase.empty())
      throw ParseError("dangling [SEP]", offset);
  };

  while (true) {
    while (i < s.size() && detail::is_space(s[i])) ++i;
    if (i >= s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && !detail::is_space(s[i])) ++i;
    const auto element = s.substr(start, i - start);

    if (element.starts_with('[')) {
      if (element == "[SEP]") {
        close_check(sep_offset);
        spec.keywords.emplace_back();
        in_keyword = true;
        keyword_closed = false;
        sep_offset = start;
      } else if (element.starts_with("[LENGTH")) {
        const auto v = detail::parse_bracket_number(element, "LENGTH");
        if (!v) throw ParseError("malformed token " + std::string(element), start);
        if (!first) throw ParseError("[LENGTH] must come first", start);
        if (*v % LengthBucket::kStep != 0)
          throw ParseError("length not a multiple of 5", start);
        spec.length = LengthBucket(*v);
      } else if (element.starts_with("[POSITION")) {
        const auto v = detail::parse_bracket_number(element, "POSITION");
        if (!v) throw ParseError("malformed token " + std::string(element), start);
        if (!in_keyword || spec.keywords.back().phrase.empty())
          throw ParseError("position before any keyword", start);
        if (keyword_closed) throw ParseError("second position for one keyword", start);
        if (*v > PositionBucket::kMax || *v % PositionBucket::kStep != 0)
          throw ParseError("position out of range", start);
        spec.keywords.back().position = PositionBucket(*v);
        keyword_closed = true;
      } else {
        throw ParseError("malformed token " + std::string(element), start);
      }
    } else {
      if (!in_keyword) throw ParseError("word outside a keyword", start);
      if (keyword_closed) throw ParseError("word after position token", start);
      spec.keywords.back().phrase.emplace_back(element);
    }
    first = false;
  }
  close_check(sep_offset);
  return spec;
}

/// Replaces every present position with an independent uniform draw from
/// {0, 10, ..., 90}; omitted positions stay omitted.
inline ControlSpec randomize_positions(ControlSpec spec, Rng& rng) {
  for (auto& kw : spec.keywords)
    if (kw.position)
      kw.position = PositionBucket(static_cast<int>(rng.uniform_below(10)) * 10);
  return spec;
}

}  // namespace kwpos
