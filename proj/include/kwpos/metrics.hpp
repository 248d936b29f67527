#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kwpos/control.hpp"
#include "kwpos/error.hpp"
#include "kwpos/tokenizer.hpp"

namespace kwpos {

enum class OutcomeKind { Correct, Within10, Over10, NotIncluded };

inline std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Correct: return "correct";
    case OutcomeKind::Within10: return "within10";
    case OutcomeKind::Over10: return "over10";
    case OutcomeKind::NotIncluded: return "not_included";
  }
  return "?";
}

// Verdict for one keyword. actual is set exactly when the keyword occurs.
struct PositionOutcome {
  OutcomeKind kind = OutcomeKind::NotIncluded;
  std::optional<PositionBucket> actual;

  friend bool operator==(const PositionOutcome&, const PositionOutcome&) = default;
};

enum class OccurrencePolicy { Nearest, First };

struct MatchOptions {
  OccurrencePolicy occurrence = OccurrencePolicy::Nearest;
  bool case_insensitive = false;
};

struct RougeScores {
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;

  friend bool operator==(const RougeScores&, const RougeScores&) = default;
};

// ---------------------------------------------------------------------------
// Keyword matching

/// Start indices of every exact token-sequence match of phrase. A paraphrase
/// is a miss; only the case policy is configurable.
inline std::vector<std::size_t> find_keyword_occurrences(
    std::span<const std::string> tokens, std::span<const std::string> phrase,
    bool case_insensitive = false) {
  if (phrase.empty()) throw Error("empty keyword phrase");
  std::vector<std::size_t> out;
  if (phrase.size() > tokens.size()) return out;
  auto eq = [&](const std::string& a, const std::string& b) {
    return case_insensitive ? detail::to_lower(a) == detail::to_lower(b) : a == b;
  };
  for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    std::size_t k = 0;
    while (k < phrase.size() && eq(tokens[i + k], phrase[k])) ++k;
    if (k == phrase.size()) out.push_back(i);
  }
  return out;
}

inline std::vector<std::size_t> find_keyword_occurrences(
    const TokenizedText& generated, std::span<const std::string> phrase,
    bool case_insensitive = false) {
  return find_keyword_occurrences(generated.words(), phrase, case_insensitive);
}

inline bool keyword_inclusion(const TokenizedText& generated, const ControlSpec& spec,
                              const MatchOptions& opts = {}) {
  if (spec.keywords.empty()) throw Error("nothing to evaluate");
  return std::ranges::all_of(spec.keywords, [&](const Keyword& kw) {
    return !find_keyword_occurrences(generated, kw.phrase, opts.case_insensitive).empty();
  });
}

inline OutcomeKind classify_deviation(PositionBucket actual, PositionBucket target) {
  const int diff = std::abs(actual.percent() - target.percent());
  if (diff == 0) return OutcomeKind::Correct;
  if (diff == PositionBucket::kStep) return OutcomeKind::Within10;
  return OutcomeKind::Over10;
}

/// Classifies where a keyword landed relative to its target bucket. With the
/// nearest policy the occurrence closest to the target decides (earliest on
/// ties); with the first policy the first occurrence decides.
inline PositionOutcome keyword_position_outcome(const TokenizedText& generated,
                                                std::span<const std::string> phrase,
                                                PositionBucket target,
                                                const MatchOptions& opts = {}) {
  const auto hits = find_keyword_occurrences(generated, phrase, opts.case_insensitive);
  if (hits.empty()) return {};
  std::optional<PositionBucket> best;
  for (std::size_t start : hits) {
    const auto bucket = quantize_position(start, generated.size());
    if (!best || std::abs(bucket.percent() - target.percent()) <
                     std::abs(best->percent() - target.percent()))
      best = bucket;
    if (opts.occurrence == OccurrencePolicy::First) break;
  }
  return {classify_deviation(*best, target), best};
}

inline std::vector<PositionOutcome> keyword_position_outcomes(const TokenizedText& generated,
                                                              const ControlSpec& spec,
                                                              const MatchOptions& opts = {}) {
  std::vector<PositionOutcome> out;
  for (const auto& kw : spec.keywords) {
    if (!kw.position)
      throw Error("keyword \"" + join_words(kw.phrase) + "\" has no target position");
    out.push_back(keyword_position_outcome(generated, kw.phrase, *kw.position, opts));
  }
  return out;
}

inline bool position_accuracy(const TokenizedText& generated, const ControlSpec& spec,
                              const MatchOptions& opts = {}) {
  if (spec.keywords.empty()) throw Error("nothing to evaluate");
  const auto outcomes = keyword_position_outcomes(generated, spec, opts);
  return std::ranges::all_of(
      outcomes, [](const auto& o) { return o.kind == OutcomeKind::Correct; });
}

// ---------------------------------------------------------------------------
// ROUGE

namespace detail {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

inline NgramCounts count_ngrams(std::span<const std::string> tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return counts;
}

inline double f1(double overlap, double candidate_total, double reference_total) {
  if (overlap <= 0.0 || candidate_total <= 0.0 || reference_total <= 0.0) return 0.0;
  const double p = overlap / candidate_total;
  const double r = overlap / reference_total;
  return 2.0 * p * r / (p + r);
}

inline double rouge_n(std::span<const std::string> cand, std::span<const std::string> ref,
                      std::size_t n) {
  const auto c = count_ngrams(cand, n);
  const auto r = count_ngrams(ref, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : c)
    if (auto it = r.find(gram); it != r.end()) overlap += std::min(count, it->second);
  const auto total = [n](std::span<const std::string> t) {
    return t.size() >= n ? static_cast<double>(t.size() - n + 1) : 0.0;
  };
  return f1(static_cast<double>(overlap), total(cand), total(ref));
}

inline std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace detail

// ROUGE-1/2 F1 over clipped n-gram counts and ROUGE-L F1 over the LCS of the
// whole token sequences. No stemming, no sentence splitting.
inline RougeScores rouge_scores(std::span<const std::string> generated,
                                std::span<const std::string> reference) {
  RougeScores s;
  s.r1 = detail::rouge_n(generated, reference, 1);
  s.r2 = detail::rouge_n(generated, reference, 2);
  s.rl = detail::f1(static_cast<double>(detail::lcs_length(generated, reference)),
                    static_cast<double>(generated.size()),
                    static_cast<double>(reference.size()));
  return s;
}

inline RougeScores rouge_scores(const TokenizedText& generated, const TokenizedText& reference) {
  return rouge_scores(generated.words(), reference.words());
}

/// Removes every occurrence of the keyword phrases. Longer phrases claim
/// tokens first (stable by input order); matches are found left to right on
/// the original sequence and skipped if they touch an already removed token.
inline std::vector<std::string> remove_keywords(
    std::span<const std::string> tokens, std::span<const std::vector<std::string>> keywords) {
  std::vector<const std::vector<std::string>*> order;
  for (const auto& k : keywords)
    if (!k.empty()) order.push_back(&k);
  std::ranges::stable_sort(order, [](auto* a, auto* b) { return a->size() > b->size(); });

  std::vector<bool> removed(tokens.size(), false);
  for (const auto* phrase : order) {
    for (std::size_t start : find_keyword_occurrences(tokens, *phrase)) {
      const auto end = start + phrase->size();
      if (std::any_of(removed.begin() + static_cast<std::ptrdiff_t>(start),
                      removed.begin() + static_cast<std::ptrdiff_t>(end),
                      [](bool b) { return b; }))
        continue;
      std::fill(removed.begin() + static_cast<std::ptrdiff_t>(start),
                removed.begin() + static_cast<std::ptrdiff_t>(end), true);
    }
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (!removed[i]) out.push_back(tokens[i]);
  return out;
}

inline RougeScores rouge_keyword_excluded(const TokenizedText& generated,
                                          const TokenizedText& reference,
                                          std::span<const std::vector<std::string>> keywords) {
  if (keywords.empty()) return rouge_scores(generated, reference);
  return rouge_scores(remove_keywords(generated.words(), keywords),
                      remove_keywords(reference.words(), keywords));
}

// ---------------------------------------------------------------------------
// BLEU / Self-BLEU

/// Sentence BLEU of one hypothesis against several references, in [0, 1].
/// Counts are clipped by the per-n-gram maximum over references; the brevity
/// penalty uses the closest reference length (shorter on ties); orders >= 2
/// get add-one smoothing, and an order with no hypothesis n-grams counts as
/// precision 1.
inline double sentence_bleu(std::span<const std::string> hypothesis,
                            std::span<const std::vector<std::string>> references,
                            std::size_t max_n = 4) {
  if (hypothesis.empty() || references.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto hyp = detail::count_ngrams(hypothesis, n);
    detail::NgramCounts max_ref;
    for (const auto& ref : references)
      for (const auto& [gram, count] : detail::count_ngrams(ref, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    std::size_t clipped = 0;
    for (const auto& [gram, count] : hyp)
      if (auto it = max_ref.find(gram); it != max_ref.end())
        clipped += std::min(count, it->second);
    const std::size_t total = hypothesis.size() >= n ? hypothesis.size() - n + 1 : 0;

    double p;
    if (n == 1) {
      if (clipped == 0) return 0.0;
      p = static_cast<double>(clipped) / static_cast<double>(total);
    } else {
      p = static_cast<double>(clipped + 1) / static_cast<double>(total + 1);
    }
    log_sum += std::log(p);
  }

  const auto c = static_cast<double>(hypothesis.size());
  std::size_t closest = references.front().size();
  for (const auto& ref : references) {
    const auto d = [&](std::size_t len) {
      return std::abs(static_cast<double>(len) - c);
    };
    if (d(ref.size()) < d(closest) || (d(ref.size()) == d(closest) && ref.size() < closest))
      closest = ref.size();
  }
  const auto r = static_cast<double>(closest);
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum / static_cast<double>(max_n));
}

/// Mean BLEU of each text against all the others, scaled to [0, 100].
inline double self_bleu(std::span<const std::string> texts, std::size_t max_n = 4) {
  if (texts.size() < 2) throw Error("self-BLEU needs at least 2 texts");
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(texts.size());
  for (const auto& t : texts) tokens.push_back(tokenize_words(t).tokens);

  std::vector<double> scores;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::vector<std::vector<std::string>> refs;
    for (std::size_t j = 0; j < tokens.size(); ++j)
      if (j != i) refs.push_back(tokens[j]);
    scores.push_back(sentence_bleu(tokens[i], refs, max_n));
  }
  // Summing in sorted order makes the mean exactly permutation invariant.
  std::ranges::sort(scores);
  double sum = 0.0;
  for (double s : scores) sum += s;
  return 100.0 * sum / static_cast<double>(scores.size());
}

// ---------------------------------------------------------------------------
// Aggregation

struct EvaluationRow {
  ControlSpec spec;
  std::vector<PositionOutcome> outcomes;
  bool included = false;
  bool position_ok = false;
};

struct OutcomeDistribution {
  std::size_t n = 0;
  double correct = 0.0;
  double within10 = 0.0;
  double over10 = 0.0;
  double not_included = 0.0;

  double total() const noexcept { return correct + within10 + over10 + not_included; }
};

struct EvaluationReport {
  double include_acc = 0.0;
  double pos_acc = 0.0;
  std::size_t n_examples = 0;
  std::map<int, OutcomeDistribution> per_target_bucket;
  std::optional<RougeScores> rouge;
  std::optional<double> self_bleu;
};

inline EvaluationRow evaluate_row(const TokenizedText& generated, const ControlSpec& spec,
                                  const MatchOptions& opts = {}) {
  EvaluationRow row{spec, keyword_position_outcomes(generated, spec, opts), false, false};
  row.included = keyword_inclusion(generated, spec, opts);
  row.position_ok = std::ranges::all_of(
      row.outcomes, [](const auto& o) { return o.kind == OutcomeKind::Correct; });
  return row;
}

/// Inclusion and position accuracy over all rows; the per-bucket outcome
/// distribution uses single-keyword rows grouped by their target bucket.
inline EvaluationReport aggregate_report(std::span<const EvaluationRow> rows) {
  if (rows.empty()) throw Error("no rows to aggregate");
  EvaluationReport report;
  report.n_examples = rows.size();
  std::size_t included = 0, placed = 0;
  std::map<int, std::array<std::size_t, 4>> tally;
  for (const auto& row : rows) {
    included += row.included ? 1 : 0;
    placed += row.position_ok ? 1 : 0;
    if (row.spec.keywords.size() != 1 || row.outcomes.size() != 1) continue;
    const auto& target = row.spec.keywords.front().position;
    if (!target) continue;
    ++tally[target->percent()][static_cast<std::size_t>(row.outcomes.front().kind)];
  }
  const auto n = static_cast<double>(rows.size());
  report.include_acc = static_cast<double>(included) / n;
  report.pos_acc = static_cast<double>(placed) / n;
  for (const auto& [bucket, counts] : tally) {
    OutcomeDistribution d;
    d.n = counts[0] + counts[1] + counts[2] + counts[3];
    const auto total = static_cast<double>(d.n);
    d.correct = static_cast<double>(counts[0]) / total;
    d.within10 = static_cast<double>(counts[1]) / total;
    d.over10 = static_cast<double>(counts[2]) / total;
    d.not_included = static_cast<double>(counts[3]) / total;
    report.per_target_bucket[bucket] = d;
  }
  return report;
}

inline nlohmann::ordered_json report_to_json(const EvaluationReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["include_acc"] = r.include_acc;
  j["pos_acc"] = r.pos_acc;
  j["n"] = r.n_examples;
  j["per_bucket"] = ordered_json::object();
  for (const auto& [bucket, d] : r.per_target_bucket) {
    ordered_json b;
    b["correct"] = d.correct;
    b["within10"] = d.within10;
    b["over10"] = d.over10;
    b["not_included"] = d.not_included;
    b["n"] = d.n;
    j["per_bucket"][std::to_string(bucket)] = std::move(b);
  }
  if (r.rouge) {
    j["rouge"] = {{"r1", r.rouge->r1}, {"r2", r.rouge->r2}, {"rl", r.rouge->rl}};
  } else {
    j["rouge"] = nullptr;
  }
  j["self_bleu"] = r.self_bleu ? ordered_json(*r.self_bleu) : ordered_json(nullptr);
  return j;
}

// Aligned-column text rendering: the Include/Pos summary followed by the
// per-target-bucket outcome breakdown, all in percent.
inline std::string render_report_table(const EvaluationReport& r) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-10s %7s %7s %7s\n", "", "Include", "Pos", "n");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-10s %7.1f %7.1f %7zu\n", "all", 100.0 * r.include_acc,
                100.0 * r.pos_acc, r.n_examples);
  out += buf;
  if (r.rouge) {
    std::snprintf(buf, sizeof buf, "ROUGE-1 %.4f  ROUGE-2 %.4f  ROUGE-L %.4f\n", r.rouge->r1,
                  r.rouge->r2, r.rouge->rl);
    out += buf;
  }
  if (r.per_target_bucket.empty()) return out;

  out += "\nTarget position";
  for (const auto& [bucket, d] : r.per_target_bucket) {
    std::snprintf(buf, sizeof buf, " %6d%%", bucket);
    out += buf;
  }
  out += '\n';
  const std::pair<const char*, double OutcomeDistribution::*> rows[] = {
      {"Correct position", &OutcomeDistribution::correct},
      {"Within 10% diff", &OutcomeDistribution::within10},
      {"Over 10% diff", &OutcomeDistribution::over10},
      {"Not included", &OutcomeDistribution::not_included}};
  for (const auto& [label, field] : rows) {
    std::snprintf(buf, sizeof buf, "%-15s", label);
    out += buf;
    for (const auto& [bucket, d] : r.per_target_bucket) {
      std::snprintf(buf, sizeof buf, " %7.1f", 100.0 * (d.*field));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace kwpos
