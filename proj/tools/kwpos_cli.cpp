// kwpos: command-line driver for control-string datasets and evaluation.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "kwpos.hpp"

namespace fs = std::filesystem;
using namespace kwpos;

namespace {

struct ListOptions {
  std::string stopwords;
  std::string frequent;
  std::size_t frequent_top_n = 100;
};

struct BuildOptions {
  std::string corpus, out;
  std::uint64_t seed = 0;
  std::uint64_t epochs = 1;
  int max_keywords = 3;
  double position_dropout = 0.10;
  double length_dropout = 0.10;
  ListOptions lists;
};

struct SpecsOptions {
  std::string corpus, out, mode = "oracle";
  std::uint64_t seed = 0;
  std::size_t n_keywords = 1;
  ListOptions lists;
};

struct EvalOptions {
  std::string specs, generations, references, out, occurrence = "nearest";
  bool rouge = false;
  bool case_insensitive = false;
};

struct SelfBleuOptions {
  std::string generations, out;
  std::size_t max_n = 4;
};

struct OracleGenOptions {
  std::string specs, out, perturb = "none", replacement = "paraphrased";
  std::uint64_t seed = 0;
  int delta = 10;
  std::size_t keyword = 0;
  bool reflect = false;
};

struct SplitOptions {
  std::string corpus, out;
  std::uint64_t seed = 0;
  std::vector<double> ratios = {0.8, 0.1, 0.1};
};

void init_logging() {
  auto logger = spdlog::stderr_logger_st("kwpos");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::level::level_enum level = spdlog::level::info;
  if (const char* env = std::getenv("KWPOS_LOG")) level = spdlog::level::from_str(env);
  spdlog::set_level(level);
}

std::ofstream open_out(const std::string& path) {
  if (const auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  return out;
}

// "<stem>.<tag><ext>" next to path.
std::string tagged_path(const std::string& path, const std::string& tag) {
  fs::path p(path);
  return (p.parent_path() / (p.stem().string() + "." + tag + p.extension().string())).string();
}

WordLists make_lists(const ListOptions& o, const std::vector<Document>& docs) {
  WordList stop = o.stopwords.empty() ? default_stopwords()
                                      : load_word_list(o.stopwords, WordListKind::Stopword);
  WordList freq = o.frequent.empty()
                      ? build_frequent_word_list(docs, o.frequent_top_n, "corpus")
                      : load_word_list(o.frequent, WordListKind::Frequent);
  spdlog::debug("stop words: {} entries, frequent words: {} entries", stop.size(), freq.size());
  return {std::move(stop), std::move(freq)};
}

std::string bar(std::size_t count, std::size_t total) {
  const std::size_t width = total == 0 ? 0 : (40 * count + total / 2) / total;
  return std::string(width, '#');
}

void print_histogram(const std::string& title, const std::vector<std::string>& labels,
                     const std::vector<std::size_t>& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  fmt::print("{}\n", title);
  for (std::size_t i = 0; i < labels.size(); ++i)
    fmt::print("  {:>7} {:>8} {:>6.1f}%  {}\n", labels[i], counts[i],
               total == 0 ? 0.0 : 100.0 * static_cast<double>(counts[i]) / static_cast<double>(total),
               bar(counts[i], total));
}

std::size_t candidate_bin(std::size_t n) {
  constexpr std::array<std::size_t, 5> edges = {1, 5, 10, 20, 50};
  return static_cast<std::size_t>(std::ranges::upper_bound(edges, n) - edges.begin());
}

// --- build -------------------------------------------------------------------

int cmd_build(const BuildOptions& o, std::size_t jobs) {
  const auto docs = load_corpus(o.corpus);
  spdlog::info("loaded {} documents from {}", docs.size(), o.corpus);
  const auto lists = make_lists(o.lists, docs);
  const SamplingConfig config{o.max_keywords, o.position_dropout, o.length_dropout};
  if (o.max_keywords < 0 || o.max_keywords > 3) throw Error("--max-keywords must be in 0..3");

  std::vector<std::size_t> cand_hist(6, 0);
  for (auto n : parallel_map(
           docs,
           [&](const Document& d) {
             return extract_keyword_candidates(tokenize_words(d.target), lists).size();
           },
           jobs))
    ++cand_hist[candidate_bin(n)];
  print_histogram("candidates per document", {"0", "1-4", "5-9", "10-19", "20-49", "50+"},
                  cand_hist);

  for (std::uint64_t epoch = 1; epoch <= o.epochs; ++epoch) {
    const auto examples = build_training_examples(docs, lists, config, o.seed, epoch, jobs);
    const auto path = o.epochs == 1 ? o.out : tagged_path(o.out, "epoch" + std::to_string(epoch));
    auto out = open_out(path);
    std::vector<std::size_t> sizes(4, 0);
    std::size_t keywords = 0, no_position = 0, no_length = 0;
    for (const auto& ex : examples) {
      out << training_example_to_json(ex).dump() << '\n';
      const auto spec = parse_control(ex.control);
      ++sizes[spec.keywords.size()];
      keywords += spec.keywords.size();
      for (const auto& kw : spec.keywords) no_position += kw.position ? 0 : 1;
      no_length += spec.length ? 0 : 1;
    }
    spdlog::info("epoch {}: wrote {} examples to {}", epoch, examples.size(), path);
    print_histogram(fmt::format("keywords per example (epoch {})", epoch), {"0", "1", "2", "3"},
                    sizes);
    fmt::print("  position omitted {:>6} / {:<6}  length omitted {:>6} / {}\n", no_position,
               keywords, no_length, examples.size());
  }
  return 0;
}

// --- specs -------------------------------------------------------------------

int cmd_specs(const SpecsOptions& o, std::size_t jobs) {
  const auto docs = load_corpus(o.corpus);
  const auto lists = make_lists(o.lists, docs);
  const auto batch =
      build_eval_specs(docs, lists, o.n_keywords, parse_spec_mode(o.mode), o.seed, jobs);
  auto out = open_out(o.out);
  for (const auto& s : batch.specs) out << eval_spec_to_json(s).dump() << '\n';
  fmt::print("specs {:>8}\nskipped {:>6}\n", batch.specs.size(), batch.skipped());
  if (batch.skipped() > 0)
    spdlog::warn("{} documents lack {} compatible keyword candidates", batch.skipped(),
                 o.n_keywords);
  for (const auto& id : batch.skipped_ids) spdlog::debug("skipped {}", id);
  return 0;
}

// --- generations I/O ---------------------------------------------------------

struct Generation {
  std::string doc_id;
  std::string text;
};

std::vector<Generation> load_generations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open generations: " + path);
  std::vector<Generation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("doc_id").get<std::string>(), j.at("generated").get<std::string>()});
    } catch (const std::exception& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string s;
  for (const auto& id : ids) s += (s.empty() ? "" : ", ") + id;
  return s;
}

// --- eval --------------------------------------------------------------------

int cmd_eval(const EvalOptions& o, std::size_t jobs) {
  const auto specs = load_eval_specs(o.specs);
  std::map<std::string, std::string, std::less<>> generated;
  for (auto& g : load_generations(o.generations))
    if (!generated.emplace(g.doc_id, std::move(g.text)).second)
      throw Error("duplicate generation for doc_id " + g.doc_id);

  std::vector<std::string> missing;
  for (const auto& s : specs)
    if (!generated.contains(s.doc_id)) missing.push_back(s.doc_id);
  if (!missing.empty())
    throw Error("no generation for doc_id(s): " + join_ids(missing));

  MatchOptions match;
  match.case_insensitive = o.case_insensitive;
  if (o.occurrence == "first")
    match.occurrence = OccurrencePolicy::First;
  else if (o.occurrence != "nearest")
    throw Error("unknown occurrence policy: " + o.occurrence);

  const auto rows = parallel_map(
      specs,
      [&](const EvalSpec& s) {
        return evaluate_row(tokenize_words(generated.find(s.doc_id)->second), s.spec, match);
      },
      jobs);
  auto report = aggregate_report(rows);

  if (o.rouge) {
    if (o.references.empty()) throw Error("--rouge needs --references");
    std::map<std::string, std::string, std::less<>> refs;
    for (auto& d : load_corpus(o.references)) refs.emplace(d.id, std::move(d.target));
    missing.clear();
    for (const auto& s : specs)
      if (!refs.contains(s.doc_id)) missing.push_back(s.doc_id);
    if (!missing.empty()) throw Error("no reference for doc_id(s): " + join_ids(missing));
    const auto scores = parallel_map(
        specs,
        [&](const EvalSpec& s) {
          std::vector<std::vector<std::string>> kws;
          for (const auto& kw : s.spec.keywords) kws.push_back(kw.phrase);
          return rouge_keyword_excluded(tokenize_words(generated.find(s.doc_id)->second),
                                        tokenize_words(refs.find(s.doc_id)->second), kws);
        },
        jobs);
    RougeScores mean;
    for (const auto& r : scores) {
      mean.r1 += r.r1;
      mean.r2 += r.r2;
      mean.rl += r.rl;
    }
    const auto n = static_cast<double>(scores.size());
    report.rouge = RougeScores{mean.r1 / n, mean.r2 / n, mean.rl / n};
  }

  if (!o.out.empty()) open_out(o.out) << report_to_json(report).dump(2) << '\n';
  fmt::print("{}", render_report_table(report));
  return 0;
}

// --- selfbleu ----------------------------------------------------------------

int cmd_selfbleu(const SelfBleuOptions& o, std::size_t jobs) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::string>, std::less<>> groups;
  for (auto& g : load_generations(o.generations)) {
    auto [it, fresh] = groups.try_emplace(g.doc_id);
    if (fresh) order.push_back(g.doc_id);
    it->second.push_back(std::move(g.text));
  }
  std::vector<std::string> kept, skipped;
  for (const auto& id : order) {
    if (groups[id].size() < 2) {
      spdlog::warn("group {} has a single text, skipped", id);
      skipped.push_back(id);
    } else {
      kept.push_back(id);
    }
  }
  const auto scores = parallel_map(
      kept, [&](const std::string& id) { return self_bleu(groups[id], o.max_n); }, jobs);

  double sum = 0.0;
  for (double s : scores) sum += s;
  const double mean = scores.empty() ? 0.0 : sum / static_cast<double>(scores.size());

  fmt::print("{:<24} {:>5} {:>10}\n", "input", "n", "Self-BLEU");
  for (std::size_t i = 0; i < kept.size(); ++i)
    fmt::print("{:<24} {:>5} {:>10.2f}\n", kept[i], groups[kept[i]].size(), scores[i]);
  if (!scores.empty()) fmt::print("{:<24} {:>5} {:>10.2f}\n", "mean", kept.size(), mean);

  if (!o.out.empty()) {
    ordered_json j;
    j["groups"] = ordered_json::array();
    for (std::size_t i = 0; i < kept.size(); ++i)
      j["groups"].push_back(
          {{"doc_id", kept[i]}, {"n", groups[kept[i]].size()}, {"self_bleu", scores[i]}});
    j["skipped"] = skipped;
    j["mean"] = scores.empty() ? ordered_json(nullptr) : ordered_json(mean);
    open_out(o.out) << j.dump(2) << '\n';
  }
  return 0;
}

// --- oracle-gen --------------------------------------------------------------

std::optional<PerturbMode> perturb_mode(const OracleGenOptions& o, const ControlSpec& spec) {
  if (o.perturb == "none") return std::nullopt;
  if (o.perturb == "drop") return DropKeyword{o.keyword};
  if (o.perturb == "paraphrase") return Paraphrase{o.keyword, split_words(o.replacement)};
  if (o.perturb != "shift") throw Error("unknown perturbation: " + o.perturb);
  int delta = o.delta;
  if (o.reflect && o.keyword < spec.keywords.size() && spec.keywords[o.keyword].position) {
    const int moved = spec.keywords[o.keyword].position->percent() + delta;
    if (moved < 0 || moved > PositionBucket::kMax) delta = -delta;
  }
  return ShiftBucket{o.keyword, delta};
}

int cmd_oracle_gen(const OracleGenOptions& o, std::size_t jobs) {
  const auto specs = load_eval_specs(o.specs);
  struct Result {
    std::optional<ordered_json> line;
    std::string error;
  };
  const auto results = parallel_map(
      specs,
      [&](const EvalSpec& s) -> Result {
        try {
          auto text = generate_satisfying(s.spec, derive_seed(o.seed, s.doc_id, 0, "oracle-gen"));
          ordered_json j;
          j["doc_id"] = s.doc_id;
          if (const auto mode = perturb_mode(o, s.spec)) {
            const auto seed = derive_seed(o.seed, s.doc_id, 0, "perturb");
            PerturbResult r;
            try {
              r = perturb(text, s.spec, *mode, seed);
            } catch (const Error&) {
              const auto* shift = std::get_if<ShiftBucket>(&*mode);
              if (!o.reflect || !shift) throw;
              r = perturb(text, s.spec, ShiftBucket{shift->keyword, -shift->delta}, seed);
            }
            j["generated"] = std::move(r.text);
            j["expected"] = ordered_json::array();
            for (const auto& e : r.expected) j["expected"].push_back(std::string(to_string(e.kind)));
          } else {
            j["generated"] = std::move(text);
          }
          return {std::move(j), {}};
        } catch (const Error& e) {
          return {std::nullopt, e.what()};
        }
      },
      jobs);

  auto out = open_out(o.out);
  std::size_t written = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (results[i].line) {
      out << results[i].line->dump() << '\n';
      ++written;
    } else {
      spdlog::warn("{}: {}", specs[i].doc_id, results[i].error);
    }
  }
  fmt::print("generated {:>8}\nskipped {:>10}\n", written, specs.size() - written);
  return 0;
}

// --- split -------------------------------------------------------------------

int cmd_split(const SplitOptions& o) {
  if (o.ratios.size() != 3) throw Error("--ratios takes three values");
  auto split = split_corpus(load_corpus(o.corpus), {o.ratios[0], o.ratios[1], o.ratios[2]}, o.seed);
  const std::array<std::pair<const char*, const std::vector<Document>*>, 3> parts = {
      {{"train", &split.train}, {"dev", &split.dev}, {"test", &split.test}}};
  for (const auto& [name, docs] : parts) {
    const auto path = tagged_path(o.out, name);
    auto out = open_out(path);
    write_corpus(out, *docs);
    fmt::print("{:<6} {:>8}  {}\n", name, docs->size(), path);
  }
  return 0;
}

void add_list_options(CLI::App* cmd, ListOptions& o) {
  cmd->add_option("--stopwords", o.stopwords, "Stop-word list file (default: built-in list)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--frequent-list", o.frequent, "Frequent-word list file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--frequent-top-n", o.frequent_top_n,
                  "Size of the frequent-word list built from the corpus")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyword-position control tokens: dataset building and evaluation"};
  app.set_config("--config", "", "INI/TOML file with option defaults");
  app.require_subcommand(1);
  std::size_t jobs = 1;
  app.add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);

  BuildOptions build;
  auto* b = app.add_subcommand("build", "Sample control strings and write training examples");
  b->add_option("--corpus", build.corpus)->required()->check(CLI::ExistingFile);
  b->add_option("--out", build.out)->required();
  b->add_option("--seed", build.seed)->required();
  b->add_option("--epochs", build.epochs)->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--max-keywords", build.max_keywords)->capture_default_str();
  b->add_option("--position-dropout", build.position_dropout)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  b->add_option("--length-dropout", build.length_dropout)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_list_options(b, build.lists);

  SpecsOptions specs;
  auto* s = app.add_subcommand("specs", "Write evaluation specs");
  s->add_option("--corpus", specs.corpus)->required()->check(CLI::ExistingFile);
  s->add_option("--out", specs.out)->required();
  s->add_option("--seed", specs.seed)->required();
  s->add_option("--n-keywords", specs.n_keywords)->check(CLI::Range(1, 3))->capture_default_str();
  s->add_option("--mode", specs.mode)
      ->check(CLI::IsMember({"oracle", "random"}))
      ->capture_default_str();
  add_list_options(s, specs.lists);

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "Score generations against evaluation specs");
  e->add_option("--specs", eval.specs)->required()->check(CLI::ExistingFile);
  e->add_option("--generations", eval.generations)->required()->check(CLI::ExistingFile);
  e->add_option("--references", eval.references, "Corpus holding reference targets")
      ->check(CLI::ExistingFile);
  e->add_option("--out", eval.out, "Report JSON");
  e->add_flag("--rouge", eval.rouge, "Add keyword-excluded ROUGE against --references");
  e->add_option("--occurrence", eval.occurrence)
      ->check(CLI::IsMember({"nearest", "first"}))
      ->capture_default_str();
  e->add_flag("--case-insensitive", eval.case_insensitive);

  SelfBleuOptions sb;
  auto* sbc = app.add_subcommand("selfbleu", "Self-BLEU per input over grouped generations");
  sbc->add_option("--generations", sb.generations)->required()->check(CLI::ExistingFile);
  sbc->add_option("--out", sb.out, "Score JSON");
  sbc->add_option("--max-n", sb.max_n)->check(CLI::Range(1, 8))->capture_default_str();

  OracleGenOptions og;
  auto* g = app.add_subcommand("oracle-gen", "Write filler texts that satisfy each spec");
  g->add_option("--specs", og.specs)->required()->check(CLI::ExistingFile);
  g->add_option("--out", og.out)->required();
  g->add_option("--seed", og.seed)->required();
  g->add_option("--perturb", og.perturb)
      ->check(CLI::IsMember({"none", "shift", "drop", "paraphrase"}))
      ->capture_default_str();
  g->add_option("--delta", og.delta, "Shift in percentage points")->capture_default_str();
  g->add_option("--keyword", og.keyword, "Index of the perturbed keyword")->capture_default_str();
  g->add_option("--replacement", og.replacement, "Paraphrase text")->capture_default_str();
  g->add_flag("--reflect", og.reflect, "Shift the other way when the requested shift leaves [0, 90] or does not fit");

  SplitOptions sp;
  auto* spc = app.add_subcommand("split", "Shuffle and split a corpus");
  spc->add_option("--corpus", sp.corpus)->required()->check(CLI::ExistingFile);
  spc->add_option("--out", sp.out, "Path template; writes <stem>.train<ext> etc.")->required();
  spc->add_option("--seed", sp.seed)->required();
  spc->add_option("--ratios", sp.ratios)->expected(3)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  init_logging();

  try {
    if (*b) return cmd_build(build, jobs);
    if (*s) return cmd_specs(specs, jobs);
    if (*e) return cmd_eval(eval, jobs);
    if (*sbc) return cmd_selfbleu(sb, jobs);
    if (*g) return cmd_oracle_gen(og, jobs);
    if (*spc) return cmd_split(sp);
  } catch (const std::exception& ex) {
    spdlog::error("{}", ex.what());
    return 1;
  }
  return 0;
}
