// End-to-end runs of the kwpos binary.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kwpos/dataset.hpp"
#include "support/test_support.hpp"

namespace kwpos {
namespace {

using testing::read_file;
using testing::write_file;

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  Cli() : dir_("cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name())) {}

  std::string path(std::string_view name) const { return (dir_ / name).string(); }

  CliRun run(const std::string& args, const std::string& env = "") const {
    const auto out = path("stdout.txt"), err = path("stderr.txt");
    const std::string cmd =
        env + " '" KWPOS_CLI_PATH "' " + args + " >'" + out + "' 2>'" + err + "'";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, read_file(out), read_file(err)};
  }

  std::string corpus(std::size_t n, std::uint64_t seed, std::size_t min_words = 20) const {
    const auto p = path("corpus.jsonl");
    std::ofstream out(p);
    write_corpus(out, testing::synthetic_corpus(n, seed, min_words));
    return p;
  }

  static nlohmann::json report(const std::string& file) { return nlohmann::json::parse(read_file(file)); }

  void write_generations(const std::string& file,
                         const std::vector<std::pair<std::string, std::string>>& rows) const {
    std::string s;
    for (const auto& [id, text] : rows)
      s += nlohmann::json{{"doc_id", id}, {"generated", text}}.dump() + "\n";
    write_file(file, s);
  }

  testing::TempDir dir_;
};

TEST_F(Cli, BuildIsByteIdenticalAcrossRunsAndJobs) {
  const auto c = corpus(10, 7);
  ASSERT_EQ(run("build --corpus " + c + " --out " + path("a.jsonl") + " --seed 7").status, 0);
  ASSERT_EQ(run("build --corpus " + c + " --out " + path("b.jsonl") + " --seed 7").status, 0);
  ASSERT_EQ(run("-j 4 build --corpus " + c + " --out " + path("c.jsonl") + " --seed 7").status, 0);
  const auto a = read_file(path("a.jsonl"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read_file(path("b.jsonl")));
  EXPECT_EQ(a, read_file(path("c.jsonl")));
}

TEST_F(Cli, BuildWritesOneFilePerEpoch) {
  const auto c = corpus(30, 8);
  const auto r = run("build --corpus " + c + " --out " + path("t.jsonl") + " --seed 1 --epochs 2");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto e1 = read_file(path("t.epoch1.jsonl"));
  const auto e2 = read_file(path("t.epoch2.jsonl"));
  EXPECT_FALSE(e1.empty());
  EXPECT_NE(e1, e2);
  EXPECT_NE(r.out.find("keywords per example (epoch 2)"), std::string::npos);
  EXPECT_NE(r.out.find("candidates per document"), std::string::npos);
}

TEST_F(Cli, SeedIsMandatory) {
  const auto c = corpus(5, 1);
  EXPECT_NE(run("build --corpus " + c + " --out " + path("x.jsonl")).status, 0);
  EXPECT_NE(run("specs --corpus " + c + " --out " + path("x.jsonl")).status, 0);
}

TEST_F(Cli, ConfigFileSuppliesOptions) {
  const auto c = corpus(10, 2);
  write_file(path("run.ini"), "[build]\nseed = 7\nepochs = 1\n");
  ASSERT_EQ(run("--config " + path("run.ini") + " build --corpus " + c + " --out " + path("a.jsonl")).status, 0);
  ASSERT_EQ(run("build --corpus " + c + " --out " + path("b.jsonl") + " --seed 7").status, 0);
  EXPECT_EQ(read_file(path("a.jsonl")), read_file(path("b.jsonl")));
}

TEST_F(Cli, CorpusErrorsCarryLineNumbers) {
  write_file(path("bad.jsonl"), "{\"id\":\"a\",\"target\":\"x\"}\n{\"id\":\"b\",\"target\":\"\"}\n");
  const auto r = run("build --corpus " + path("bad.jsonl") + " --out " + path("o.jsonl") + " --seed 1");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("bad.jsonl:2:"), std::string::npos) << r.err;
}

TEST_F(Cli, LogLevelFromEnvironment) {
  write_file(path("bad.jsonl"), "not json\n");
  const auto args = "build --corpus " + path("bad.jsonl") + " --out " + path("o.jsonl") + " --seed 1";
  EXPECT_FALSE(run(args).err.empty());
  const auto quiet = run(args, "KWPOS_LOG=off");
  EXPECT_EQ(quiet.status, 1);
  EXPECT_TRUE(quiet.err.empty()) << quiet.err;
}

TEST_F(Cli, SpecsOracleAndRandomShareKeywords) {
  const auto c = corpus(60, 3);
  ASSERT_EQ(run("specs --corpus " + c + " --out " + path("o.jsonl") + " --frequent-top-n 10 --seed 4 --n-keywords 2").status, 0);
  ASSERT_EQ(run("specs --corpus " + c + " --out " + path("r.jsonl") +
                " --frequent-top-n 10 --seed 4 --n-keywords 2 --mode random").status, 0);
  const auto oracle = load_eval_specs(path("o.jsonl"));
  const auto random = load_eval_specs(path("r.jsonl"));
  ASSERT_EQ(oracle.size(), random.size());
  ASSERT_FALSE(oracle.empty());
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    EXPECT_EQ(oracle[i].doc_id, random[i].doc_id);
    EXPECT_EQ(random[i].mode, SpecMode::Random);
    ASSERT_EQ(oracle[i].spec.keywords.size(), random[i].spec.keywords.size());
    for (std::size_t k = 0; k < oracle[i].spec.keywords.size(); ++k)
      EXPECT_EQ(oracle[i].spec.keywords[k].phrase, random[i].spec.keywords[k].phrase);
  }
}

TEST_F(Cli, SpecsReportsSkips) {
  const auto c = corpus(20, 5, 1);  // some targets have a single word
  const auto r = run("specs --corpus " + c + " --out " + path("s.jsonl") + " --frequent-top-n 10 --seed 1 --n-keywords 3");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto pos = r.out.find("skipped");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_GT(std::stoi(r.out.substr(pos + 7)), 0);
}

TEST_F(Cli, EvalOnTargetsIsPerfect) {
  const auto c = corpus(80, 6);
  ASSERT_EQ(run("specs --corpus " + c + " --out " + path("s.jsonl") + " --frequent-top-n 10 --seed 2 --n-keywords 3").status, 0);
  std::vector<std::pair<std::string, std::string>> gens;
  for (const auto& d : load_corpus(c)) gens.emplace_back(d.id, d.target);
  write_generations(path("g.jsonl"), gens);
  const auto r = run("eval --specs " + path("s.jsonl") + " --generations " + path("g.jsonl") +
                     " --out " + path("rep.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rep = report(path("rep.json"));
  EXPECT_EQ(rep["include_acc"], 1.0);
  EXPECT_EQ(rep["pos_acc"], 1.0);
  EXPECT_TRUE(rep["rouge"].is_null());
  EXPECT_NE(r.out.find("100.0"), std::string::npos);
}

TEST_F(Cli, EvalListsMissingIds) {
  write_file(path("s.jsonl"),
             R"({"doc_id":"a","length":5,"keywords":[{"phrase":"dog","position":0}],"mode":"oracle"})"
             "\n"
             R"({"doc_id":"b","length":5,"keywords":[{"phrase":"dog","position":0}],"mode":"oracle"})"
             "\n"
             R"({"doc_id":"c","length":5,"keywords":[{"phrase":"dog","position":0}],"mode":"oracle"})"
             "\n");
  write_generations(path("g.jsonl"), {{"b", "dog x x x x"}});
  const auto r = run("eval --specs " + path("s.jsonl") + " --generations " + path("g.jsonl"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("a, c"), std::string::npos) << r.err;
}

TEST_F(Cli, EvalRougeOnIdenticalText) {
  write_file(path("s.jsonl"),
             R"({"doc_id":"a","length":5,"keywords":[{"phrase":"zebra","position":0}],"mode":"oracle"})"
             "\n");
  write_file(path("refs.jsonl"), R"({"id":"a","target":"the dog was hit by a car"})" "\n");
  write_generations(path("g.jsonl"), {{"a", "the dog was hit by a car"}});
  const auto r = run("eval --specs " + path("s.jsonl") + " --generations " + path("g.jsonl") +
                     " --references " + path("refs.jsonl") + " --rouge --out " + path("rep.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rep = report(path("rep.json"));
  EXPECT_EQ(rep["rouge"]["r1"], 1.0);
  EXPECT_EQ(rep["rouge"]["r2"], 1.0);
  EXPECT_EQ(rep["rouge"]["rl"], 1.0);
  EXPECT_EQ(rep["include_acc"], 0.0);
}

TEST_F(Cli, ShiftedOracleGenerationsAreAllWithin10) {
  const auto c = corpus(120, 9);
  ASSERT_EQ(run("specs --corpus " + c + " --out " + path("s.jsonl") + " --frequent-top-n 10 --seed 5").status, 0);
  const auto g = run("oracle-gen --specs " + path("s.jsonl") + " --out " + path("g.jsonl") +
                     " --seed 3 --perturb shift --delta 10 --reflect");
  ASSERT_EQ(g.status, 0) << g.err;
  // A shift can be infeasible for a long phrase near the end; score the rest.
  std::set<std::string> generated;
  for (const auto& line : split_lines(read_file(path("g.jsonl"))))
    generated.insert(nlohmann::json::parse(line)["doc_id"].get<std::string>());
  std::string kept;
  for (const auto& line : split_lines(read_file(path("s.jsonl"))))
    if (generated.contains(nlohmann::json::parse(line)["doc_id"].get<std::string>())) kept += line + "\n";
  ASSERT_GT(generated.size(), 100u);
  write_file(path("kept.jsonl"), kept);
  const auto r = run("eval --specs " + path("kept.jsonl") + " --generations " + path("g.jsonl") +
                     " --out " + path("rep.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rep = report(path("rep.json"));
  EXPECT_EQ(rep["include_acc"], 1.0);
  EXPECT_EQ(rep["pos_acc"], 0.0);
  ASSERT_FALSE(rep["per_bucket"].empty());
  for (const auto& [bucket, d] : rep["per_bucket"].items()) EXPECT_EQ(d["within10"], 1.0) << bucket;
}

TEST_F(Cli, OracleGenIsDeterministicAcrossJobs) {
  const auto c = corpus(50, 10);
  ASSERT_EQ(run("specs --corpus " + c + " --out " + path("s.jsonl") + " --frequent-top-n 10 --seed 5 --n-keywords 2").status, 0);
  ASSERT_EQ(run("oracle-gen --specs " + path("s.jsonl") + " --out " + path("a.jsonl") + " --seed 3").status, 0);
  ASSERT_EQ(run("-j 4 oracle-gen --specs " + path("s.jsonl") + " --out " + path("b.jsonl") + " --seed 3").status, 0);
  EXPECT_EQ(read_file(path("a.jsonl")), read_file(path("b.jsonl")));
  const auto r = run("eval --specs " + path("s.jsonl") + " --generations " + path("a.jsonl") +
                     " --out " + path("rep.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(report(path("rep.json"))["pos_acc"], 1.0);
}

TEST_F(Cli, SelfBleuTable) {
  write_generations(path("g.jsonl"), {{"same", "the dog was hit by a car"},
                                      {"same", "the dog was hit by a car"},
                                      {"disjoint", "a b c d"},
                                      {"disjoint", "e f g h"},
                                      {"mixed", "the cat sat on the mat"},
                                      {"mixed", "the cat is on the mat"},
                                      {"mixed", "a dog sat on a log"},
                                      {"lonely", "only one text"}});
  const auto r = run("selfbleu --generations " + path("g.jsonl") + " --out " + path("sb.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.err.find("lonely"), std::string::npos);
  const auto j = report(path("sb.json"));
  ASSERT_EQ(j["groups"].size(), 3u);
  EXPECT_EQ(j["groups"][0]["self_bleu"], 100.0);
  EXPECT_EQ(j["groups"][1]["self_bleu"], 0.0);
  EXPECT_NEAR(j["groups"][2]["self_bleu"].get<double>(), 43.192960796333374, 1e-9);
  EXPECT_EQ(j["skipped"], nlohmann::json::array({"lonely"}));
}

TEST_F(Cli, SplitWritesThreeParts) {
  const auto c = corpus(10, 11);
  const auto r = run("split --corpus " + c + " --out " + path("parts/c.jsonl") + " --seed 1");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(load_corpus(path("parts/c.train.jsonl")).size(), 8u);
  EXPECT_EQ(load_corpus(path("parts/c.dev.jsonl")).size(), 1u);
  EXPECT_EQ(load_corpus(path("parts/c.test.jsonl")).size(), 1u);
}

}  // namespace
}  // namespace kwpos
