#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kwpos/control.hpp"
#include "kwpos/error.hpp"
#include "kwpos/filler_lexicon.hpp"
#include "kwpos/metrics.hpp"
#include "kwpos/random.hpp"
#include "kwpos/tokenizer.hpp"

namespace kwpos {

// Moves keyword `keyword` by `delta` percentage points.
struct ShiftBucket {
  std::size_t keyword = 0;
  int delta = 10;
};

// Removes keyword `keyword` entirely.
struct DropKeyword {
  std::size_t keyword = 0;
};

// Puts `replacement` where keyword `keyword` was.
struct Paraphrase {
  std::size_t keyword = 0;
  std::vector<std::string> replacement;
};

using PerturbMode = std::variant<ShiftBucket, DropKeyword, Paraphrase>;

struct PerturbResult {
  std::string text;
  std::vector<PositionOutcome> expected;
};

inline constexpr std::size_t kDefaultGeneratedLength = 50;

namespace detail {

struct PlacementItem {
  std::vector<std::string> tokens;
  PositionBucket bucket;
};

// Word indices i of an n-word text with quantize_position(i, n) == bucket,
// as a half-open range.
inline std::pair<std::size_t, std::size_t> bucket_index_range(PositionBucket bucket,
                                                              std::size_t n) {
  const auto b = static_cast<std::size_t>(bucket.percent());
  return {(b * n + 99) / 100, ((b + 10) * n + 99) / 100};
}

// Greedy placement in bucket order, shorter phrases first within a bucket,
// each item at the earliest index inside its bucket range that leaves `gap`
// filler words after the previous item. Returns start indices aligned with
// `items`.
inline std::optional<std::vector<std::size_t>> place_items(
    std::span<const PlacementItem> items, std::size_t n, std::size_t gap = 1) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, [&](auto a, auto b) {
    if (items[a].bucket != items[b].bucket) return items[a].bucket < items[b].bucket;
    return items[a].tokens.size() < items[b].tokens.size();
  });

  std::vector<std::size_t> starts(items.size());
  std::size_t next_free = 0;
  for (std::size_t idx : order) {
    const auto [lo, hi] = bucket_index_range(items[idx].bucket, n);
    const std::size_t start = std::max(lo, next_free);
    if (start >= hi || start + items[idx].tokens.size() > n) return std::nullopt;
    starts[idx] = start;
    next_free = start + items[idx].tokens.size() + gap;
  }
  return starts;
}

inline std::string fill_text(std::span<const PlacementItem> items,
                             std::span<const std::size_t> starts, std::size_t n,
                             std::span<const std::string_view> lexicon,
                             const std::set<std::string, std::less<>>& forbidden,
                             std::uint64_t seed) {
  std::vector<std::string_view> allowed;
  for (auto w : lexicon)
    if (!forbidden.contains(to_lower(w))) allowed.push_back(w);
  if (allowed.empty()) throw Error("filler lexicon exhausted by keyword tokens");

  std::vector<std::string_view> slots(n);
  std::vector<bool> taken(n, false);
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t k = 0; k < items[i].tokens.size(); ++k) {
      slots[starts[i] + k] = items[i].tokens[k];
      taken[starts[i] + k] = true;
    }
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i)
    if (!taken[i]) slots[i] = allowed[rng.uniform_below(allowed.size())];

  std::string text;
  for (auto w : slots) {
    if (!text.empty()) text += ' ';
    text += w;
  }
  return text;
}

inline void require_stable_phrase(std::span<const std::string> phrase) {
  if (phrase.empty()) throw Error("empty keyword phrase");
  if (tokenize_words(join_words(phrase)).tokens !=
      std::vector<std::string>(phrase.begin(), phrase.end()))
    throw Error("phrase \"" + join_words(phrase) + "\" does not tokenize to itself");
}

inline std::vector<PlacementItem> placement_items(const ControlSpec& spec) {
  std::vector<PlacementItem> items;
  for (const auto& kw : spec.keywords) {
    if (!kw.position)
      throw Error("keyword \"" + join_words(kw.phrase) + "\" has no target position");
    require_stable_phrase(kw.phrase);
    items.push_back({kw.phrase, *kw.position});
  }
  return items;
}

inline std::set<std::string, std::less<>> keyword_vocabulary(const ControlSpec& spec) {
  std::set<std::string, std::less<>> out;
  for (const auto& kw : spec.keywords)
    for (const auto& t : kw.phrase) out.insert(to_lower(t));
  return out;
}

}  // namespace detail

/// Builds a filler text that satisfies every keyword position of spec.
///
/// The word count is the smallest feasible value in [length, length + 4]
/// (50-54 when length is absent). Keywords are placed greedily in bucket
/// order with one filler word between them; only if no word count admits
/// that are they packed back to back. Filler never shares a token with any
/// keyword.
inline std::string generate_satisfying(
    const ControlSpec& spec, std::uint64_t seed,
    std::span<const std::string_view> lexicon = kFillerLexicon) {
  validate(spec);
  const auto items = detail::placement_items(spec);
  const std::size_t base =
      spec.length ? static_cast<std::size_t>(spec.length->words()) : kDefaultGeneratedLength;
  for (std::size_t gap : {1, 0})
    for (std::size_t n = base; n < base + LengthBucket::kStep; ++n)
      if (const auto starts = detail::place_items(items, n, gap))
        return detail::fill_text(items, *starts, n, lexicon, detail::keyword_vocabulary(spec),
                                 seed);
  throw Error("infeasible spec");
}

/// Rebuilds a spec-satisfying text with one known defect and reports the
/// outcome the evaluator must assign to every keyword. The word count of the
/// input text is preserved.
inline PerturbResult perturb(const std::string& text, const ControlSpec& spec,
                             const PerturbMode& mode, std::uint64_t seed,
                             std::span<const std::string_view> lexicon = kFillerLexicon) {
  const auto tokens = tokenize_words(text);
  if (!position_accuracy(tokens, spec)) throw Error("text does not satisfy spec");
  const std::size_t n = tokens.size();

  auto items = detail::placement_items(spec);
  PerturbResult result;
  for (const auto& item : items) result.expected.push_back({OutcomeKind::Correct, item.bucket});
  auto forbidden = detail::keyword_vocabulary(spec);

  const std::size_t target = std::visit([](const auto& m) { return m.keyword; }, mode);
  if (target >= items.size()) throw Error("perturbed keyword index out of range");

  if (const auto* shift = std::get_if<ShiftBucket>(&mode)) {
    if (shift->delta == 0 || shift->delta % PositionBucket::kStep != 0)
      throw Error("shift must be a nonzero multiple of 10");
    const int moved = items[target].bucket.percent() + shift->delta;
    if (moved < 0 || moved > PositionBucket::kMax)
      throw Error("shift moves keyword outside [0, 90]");
    const PositionBucket from = items[target].bucket;
    items[target].bucket = PositionBucket(moved);
    result.expected[target] = {classify_deviation(items[target].bucket, from),
                               items[target].bucket};
  } else if (std::holds_alternative<DropKeyword>(mode)) {
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(target));
    result.expected[target] = {};
  } else {
    const auto& para = std::get<Paraphrase>(mode);
    detail::require_stable_phrase(para.replacement);
    if (is_contiguous_subsequence(spec.keywords[target].phrase, para.replacement))
      throw Error("replacement still contains the keyword");
    items[target].tokens = para.replacement;
    for (const auto& t : para.replacement) forbidden.insert(detail::to_lower(t));
    result.expected[target] = {};
  }

  const auto starts = detail::place_items(items, n);
  if (!starts) throw Error("infeasible spec");
  result.text = detail::fill_text(items, *starts, n, lexicon, forbidden, seed);
  return result;
}

}  // namespace kwpos
