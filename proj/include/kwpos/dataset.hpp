#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kwpos/control.hpp"
#include "kwpos/document.hpp"
#include "kwpos/error.hpp"
#include "kwpos/parallel.hpp"
#include "kwpos/random.hpp"
#include "kwpos/tokenizer.hpp"

namespace kwpos {

using ordered_json = nlohmann::ordered_json;

struct TrainingExample {
  std::string doc_id;
  std::string control;
  std::string input;
  std::string target;

  friend bool operator==(const TrainingExample&, const TrainingExample&) = default;
};

enum class SpecMode { Oracle, Random };

inline std::string_view to_string(SpecMode mode) {
  return mode == SpecMode::Oracle ? "oracle" : "random";
}

inline SpecMode parse_spec_mode(std::string_view s) {
  if (s == "oracle") return SpecMode::Oracle;
  if (s == "random") return SpecMode::Random;
  throw Error("unknown spec mode: " + std::string(s));
}

struct EvalSpec {
  std::string doc_id;
  ControlSpec spec;
  SpecMode mode = SpecMode::Oracle;

  std::size_t n_keywords() const noexcept { return spec.keywords.size(); }

  friend bool operator==(const EvalSpec&, const EvalSpec&) = default;
};

struct EvalSpecBatch {
  std::vector<EvalSpec> specs;
  std::vector<std::string> skipped_ids;

  std::size_t skipped() const noexcept { return skipped_ids.size(); }
};

struct CorpusSplit {
  std::vector<Document> train;
  std::vector<Document> dev;
  std::vector<Document> test;
};

struct SplitRatios {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

// ---------------------------------------------------------------------------
// Corpus I/O

inline Document document_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("record is not a JSON object");
  const auto id = j.find("id");
  if (id == j.end() || !id->is_string()) throw Error("missing string field \"id\"");
  const auto target = j.find("target");
  if (target == j.end() || !target->is_string())
    throw Error("missing string field \"target\"");

  Document doc{id->get<std::string>(), std::nullopt, target->get<std::string>()};
  if (doc.id.empty()) throw Error("empty id");
  if (doc.target.empty()) throw Error("empty target");
  if (const auto source = j.find("source"); source != j.end() && !source->is_null()) {
    if (!source->is_string()) throw Error("field \"source\" must be a string or null");
    doc.source = source->get<std::string>();
  }
  return doc;
}

inline ordered_json document_to_json(const Document& doc) {
  ordered_json j;
  j["id"] = doc.id;
  j["source"] = doc.source ? ordered_json(*doc.source) : ordered_json(nullptr);
  j["target"] = doc.target;
  return j;
}

/// Streams documents from normalized JSONL ({"id", "source"?, "target"}),
/// calling sink once per record in file order. Blank lines are skipped.
inline void read_corpus(std::istream& in, const std::function<void(Document)>& sink,
                        std::string_view name = "<corpus>") {
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = std::string(name) + ":" + std::to_string(line_no) + ": ";
    Document doc;
    try {
      doc = document_from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(where + "malformed JSON: " + e.what());
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
    if (!seen.insert(doc.id).second) throw Error(where + "duplicate id \"" + doc.id + "\"");
    sink(std::move(doc));
  }
}

inline std::vector<Document> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus: " + path);
  std::vector<Document> docs;
  read_corpus(in, [&](Document d) { docs.push_back(std::move(d)); }, path);
  return docs;
}

inline void write_corpus(std::ostream& out, std::span<const Document> docs) {
  for (const auto& d : docs) out << document_to_json(d).dump() << '\n';
}

// ---------------------------------------------------------------------------
// Splitting

/// Seeded shuffle, then a partition by ratios. Sizes use largest-remainder
/// rounding and every part receives at least one document.
inline CorpusSplit split_corpus(std::vector<Document> docs, const SplitRatios& ratios,
                                std::uint64_t seed) {
  const std::array<double, 3> r = {ratios.train, ratios.dev, ratios.test};
  if (std::ranges::any_of(r, [](double x) { return !(x > 0.0); }))
    throw Error("split ratios must be positive");
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) throw Error("split ratios must sum to 1");
  const std::size_t n = docs.size();
  if (n < 3) throw Error("need at least 3 documents to split");

  std::array<std::size_t, 3> size{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = static_cast<double>(n) * r[i];
    size[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    frac[i] = exact - static_cast<double>(size[i]);
    assigned += size[i];
  }
  std::array<std::size_t, 3> by_frac = {0, 1, 2};
  std::ranges::stable_sort(by_frac, [&](auto a, auto b) { return frac[a] > frac[b]; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++size[by_frac[i % 3]];
  for (auto& s : size) {
    if (s != 0) continue;
    auto largest = std::ranges::max_element(size);
    --*largest;
    s = 1;
  }

  Rng rng(derive_seed(seed, "", 0, "split"));
  rng.shuffle(docs.begin(), docs.end());

  CorpusSplit out;
  auto it = std::make_move_iterator(docs.begin());
  out.train.assign(it, it + static_cast<std::ptrdiff_t>(size[0]));
  it += static_cast<std::ptrdiff_t>(size[0]);
  out.dev.assign(it, it + static_cast<std::ptrdiff_t>(size[1]));
  it += static_cast<std::ptrdiff_t>(size[1]);
  out.test.assign(it, std::make_move_iterator(docs.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Training examples

inline std::string assemble_input(const std::string& control,
                                  const std::optional<std::string>& source) {
  if (!source) return control;
  if (control.empty()) return *source;
  return control + " [SEP] " + *source;
}

inline TrainingExample build_training_example(const Document& doc, const WordLists& lists,
                                              const SamplingConfig& config,
                                              std::uint64_t seed, std::uint64_t epoch) {
  try {
    const auto target = tokenize_words(doc.target);
    const auto candidates = extract_keyword_candidates(target, lists);
    Rng rng(derive_seed(seed, doc.id, epoch, "train"));
    const auto spec = sample_control_spec(target, candidates, rng, config);
    auto control = serialize_control(spec);
    auto input = assemble_input(control, doc.source);
    return {doc.id, std::move(control), std::move(input), doc.target};
  } catch (const Error& e) {
    throw Error("doc " + doc.id + ": " + e.what());
  }
}

/// One example per document for the given epoch. Each document's sample is a
/// pure function of (seed, doc id, epoch), so output is independent of jobs.
inline std::vector<TrainingExample> build_training_examples(
    const std::vector<Document>& docs, const WordLists& lists,
    const SamplingConfig& config, std::uint64_t seed, std::uint64_t epoch,
    std::size_t jobs = 1) {
  return parallel_map(
      docs,
      [&](const Document& d) { return build_training_example(d, lists, config, seed, epoch); },
      jobs);
}

inline ordered_json training_example_to_json(const TrainingExample& ex) {
  ordered_json j;
  j["doc_id"] = ex.doc_id;
  j["control"] = ex.control;
  j["input"] = ex.input;
  j["target"] = ex.target;
  return j;
}

// ---------------------------------------------------------------------------
// Evaluation specs

namespace detail {

// Depth-first search for `want` mutually compatible candidates, visiting
// candidates in `order`. Returns indices in pick order.
inline bool pick_compatible(std::span<const KeywordCandidate> cands,
                            std::span<const std::size_t> order, std::size_t from,
                            std::size_t want, std::vector<std::size_t>& picked) {
  if (picked.size() == want) return true;
  for (std::size_t o = from; o < order.size(); ++o) {
    const auto& cand = cands[order[o]];
    const bool ok = std::ranges::all_of(
        picked, [&](std::size_t p) { return compatible(cands[p], cand); });
    if (!ok) continue;
    picked.push_back(order[o]);
    if (pick_compatible(cands, order, o + 1, want, picked)) return true;
    picked.pop_back();
  }
  return false;
}

}  // namespace detail

/// Picks exactly n_keywords mutually compatible keywords from the target.
/// Oracle mode reads positions from the target; random mode keeps the same
/// keywords and redraws positions from an independent stream. Length is
/// always the target's bucket. Returns nullopt when no compatible set exists.
inline std::optional<EvalSpec> build_eval_spec(const Document& doc, const WordLists& lists,
                                               std::size_t n_keywords, SpecMode mode,
                                               std::uint64_t seed) {
  const auto target = tokenize_words(doc.target);
  const auto candidates = extract_keyword_candidates(target, lists);

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, doc.id, 0, "eval"));
  rng.shuffle(order.begin(), order.end());

  std::vector<std::size_t> picked;
  if (!detail::pick_compatible(candidates, order, 0, n_keywords, picked)) return std::nullopt;

  EvalSpec out{doc.id, {}, mode};
  out.spec.length = quantize_length(target.size());
  for (std::size_t p : picked)
    out.spec.keywords.push_back(
        {candidates[p].phrase, quantize_position(candidates[p].begin, target.size())});
  if (mode == SpecMode::Random) {
    Rng positions(derive_seed(seed, doc.id, 0, "eval-random"));
    out.spec = randomize_positions(std::move(out.spec), positions);
  }
  return out;
}

inline EvalSpecBatch build_eval_specs(const std::vector<Document>& docs,
                                      const WordLists& lists, std::size_t n_keywords,
                                      SpecMode mode, std::uint64_t seed,
                                      std::size_t jobs = 1) {
  if (n_keywords < 1 || n_keywords > 3) throw Error("n_keywords must be 1, 2 or 3");
  auto results = parallel_map(
      docs,
      [&](const Document& d) { return build_eval_spec(d, lists, n_keywords, mode, seed); },
      jobs);
  EvalSpecBatch batch;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (results[i])
      batch.specs.push_back(std::move(*results[i]));
    else
      batch.skipped_ids.push_back(docs[i].id);
  }
  return batch;
}

inline ordered_json eval_spec_to_json(const EvalSpec& s) {
  ordered_json j;
  j["doc_id"] = s.doc_id;
  j["length"] = s.spec.length ? ordered_json(s.spec.length->words()) : ordered_json(nullptr);
  j["keywords"] = ordered_json::array();
  for (const auto& kw : s.spec.keywords) {
    ordered_json k;
    k["phrase"] = join_words(kw.phrase);
    k["position"] = kw.position ? ordered_json(kw.position->percent()) : ordered_json(nullptr);
    j["keywords"].push_back(std::move(k));
  }
  j["mode"] = std::string(to_string(s.mode));
  return j;
}

inline EvalSpec eval_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("record is not a JSON object");
  EvalSpec s;
  s.doc_id = j.at("doc_id").get<std::string>();
  if (const auto& len = j.at("length"); !len.is_null())
    s.spec.length = LengthBucket(len.get<int>());
  for (const auto& k : j.at("keywords")) {
    Keyword kw;
    kw.phrase = split_words(k.at("phrase").get<std::string>());
    if (kw.phrase.empty()) throw Error("empty keyword phrase");
    if (const auto& pos = k.at("position"); !pos.is_null())
      kw.position = PositionBucket(pos.get<int>());
    s.spec.keywords.push_back(std::move(kw));
  }
  s.mode = parse_spec_mode(j.at("mode").get<std::string>());
  validate(s.spec);
  return s;
}

inline std::vector<EvalSpec> load_eval_specs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file: " + path);
  std::vector<EvalSpec> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(eval_spec_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace kwpos
