#include "kwpos/dataset.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kwpos/metrics.hpp"
#include "support/test_support.hpp"

namespace kwpos {
namespace {

std::vector<Document> read_all(const std::string& jsonl) {
  std::istringstream in(jsonl);
  std::vector<Document> docs;
  read_corpus(in, [&](Document d) { docs.push_back(std::move(d)); }, "mem");
  return docs;
}

std::string load_error(const std::string& jsonl) {
  try {
    read_all(jsonl);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

WordLists plain_lists() {
  return {default_stopwords(),
          WordList(WordListKind::Frequent, std::initializer_list<std::string_view>{})};
}

// --- load_corpus ----------------------------------------------------------

TEST(LoadCorpus, ThreeValidLinesInOrder) {
  const auto docs = read_all(
      R"({"id":"a","source":"src a","target":"one"})"
      "\n"
      R"({"id":"b","source":null,"target":"two"})"
      "\n\n"
      R"({"id":"c","target":"three"})"
      "\n");
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0], (Document{"a", "src a", "one"}));
  EXPECT_EQ(docs[1], (Document{"b", std::nullopt, "two"}));
  EXPECT_EQ(docs[2].id, "c");
}

TEST(LoadCorpus, EmptyTargetNamesTheLine) {
  const auto err = load_error(R"({"id":"a","target":"x"})"
                              "\n"
                              R"({"id":"b","target":""})");
  EXPECT_NE(err.find("mem:2:"), std::string::npos) << err;
  EXPECT_NE(err.find("empty target"), std::string::npos) << err;
}

TEST(LoadCorpus, MalformedJsonNamesTheLine) {
  const auto err = load_error(R"({"id":"a","target":"x"})"
                              "\n\n"
                              R"({"id":"b", target)");
  EXPECT_NE(err.find("mem:3: malformed JSON"), std::string::npos) << err;
}

TEST(LoadCorpus, DuplicateId) {
  const auto err = load_error(R"({"id":"a","target":"x"})"
                              "\n"
                              R"({"id":"a","target":"y"})");
  EXPECT_NE(err.find("mem:2: duplicate id"), std::string::npos) << err;
}

TEST(LoadCorpus, WrongFieldTypes) {
  EXPECT_NE(load_error(R"({"id":3,"target":"x"})").find("\"id\""), std::string::npos);
  EXPECT_NE(load_error(R"({"id":"a","target":"x","source":4})").find("source"),
            std::string::npos);
  EXPECT_NE(load_error("[1,2]").find("not a JSON object"), std::string::npos);
}

TEST(LoadCorpus, LongSourceParsedIntact) {
  Rng rng(1);
  const auto source = testing::synthetic_text(rng, 778, 778);
  nlohmann::json j = {{"id", "cnn-1"}, {"source", source}, {"target", "Dog survives."}};
  const auto docs = read_all(j.dump());
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].source, source);
  EXPECT_EQ(split_words(*docs[0].source).size(), 778u);
}

TEST(LoadCorpus, FileRoundTrip) {
  testing::TempDir dir("corpus");
  const auto docs = testing::synthetic_corpus(25, 3);
  {
    std::ofstream out(dir / "c.jsonl");
    write_corpus(out, docs);
  }
  EXPECT_EQ(load_corpus((dir / "c.jsonl").string()), docs);
  EXPECT_THROW(load_corpus((dir / "missing.jsonl").string()), Error);
}

// --- split_corpus ---------------------------------------------------------

std::set<std::string> ids(const std::vector<Document>& docs) {
  std::set<std::string> out;
  for (const auto& d : docs) out.insert(d.id);
  return out;
}

TEST(SplitCorpus, EightOneOne) {
  const auto split = split_corpus(testing::synthetic_corpus(10, 1), {}, 42);
  EXPECT_EQ(split.train.size(), 8u);
  EXPECT_EQ(split.dev.size(), 1u);
  EXPECT_EQ(split.test.size(), 1u);
}

TEST(SplitCorpus, RejectsBadRatios) {
  const auto docs = testing::synthetic_corpus(10, 1);
  EXPECT_THROW(split_corpus(docs, {1.0, 0.0, 0.0}, 1), Error);
  EXPECT_THROW(split_corpus(docs, {0.5, 0.3, 0.3}, 1), Error);
  EXPECT_THROW(split_corpus(testing::synthetic_corpus(2, 1), {}, 1), Error);
}

TEST(SplitCorpus, DeterministicPartition) {
  const auto docs = testing::synthetic_corpus(137, 9);
  const auto a = split_corpus(docs, {}, 5);
  const auto b = split_corpus(docs, {}, 5);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.dev, b.dev);
  EXPECT_EQ(a.test, b.test);

  auto all = ids(a.train);
  for (const auto& part : {a.dev, a.test})
    for (const auto& d : part) EXPECT_TRUE(all.insert(d.id).second) << "overlap " << d.id;
  EXPECT_EQ(all, ids(docs));
}

TEST(SplitCorpus, SizesDependOnlyOnCount) {
  for (std::size_t n = 3; n < 60; ++n) {
    auto docs = testing::synthetic_corpus(n, n);
    const auto a = split_corpus(docs, {0.7, 0.2, 0.1}, 1);
    std::ranges::reverse(docs);
    const auto b = split_corpus(docs, {0.7, 0.2, 0.1}, 2);
    EXPECT_EQ(a.train.size(), b.train.size());
    EXPECT_EQ(a.dev.size(), b.dev.size());
    EXPECT_EQ(a.test.size(), b.test.size());
    EXPECT_GE(a.dev.size(), 1u);
    EXPECT_GE(a.test.size(), 1u);
    EXPECT_EQ(a.train.size() + a.dev.size() + a.test.size(), n);
  }
}

// --- training examples ----------------------------------------------------

TEST(TrainingExamples, DeterministicForSeedAndEpoch) {
  const auto docs = testing::synthetic_corpus(60, 4);
  const auto a = build_training_examples(docs, plain_lists(), {}, 17, 1);
  EXPECT_EQ(a, build_training_examples(docs, plain_lists(), {}, 17, 1));
  EXPECT_EQ(a, build_training_examples(docs, plain_lists(), {}, 17, 1, 4));
}

TEST(TrainingExamples, EpochsResample) {
  const auto docs = testing::synthetic_corpus(100, 8);
  for (const auto& d : docs)
    ASSERT_GE(extract_keyword_candidates(tokenize_words(d.target), plain_lists()).size(), 5u);
  EXPECT_NE(build_training_examples(docs, plain_lists(), {}, 3, 1),
            build_training_examples(docs, plain_lists(), {}, 3, 2));
}

TEST(TrainingExamples, SingleCandidateDocument) {
  const Document doc{"h", std::nullopt, "Hello ."};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ex = build_training_example(doc, plain_lists(), {}, seed, 0);
    EXPECT_LE(parse_control(ex.control).keywords.size(), 1u);
  }
}

TEST(TrainingExamples, ControlRoundTripsAndKeywordsOccur) {
  const auto docs = testing::synthetic_corpus(300, 12, 1, 60);
  for (const auto& ex : build_training_examples(docs, plain_lists(), {}, 99, 0, 3)) {
    const auto spec = parse_control(ex.control);
    EXPECT_EQ(serialize_control(spec), ex.control);
    EXPECT_NO_THROW(validate(spec));
    const auto target = tokenize_words(ex.target);
    for (const auto& kw : spec.keywords)
      EXPECT_FALSE(find_keyword_occurrences(target, kw.phrase).empty()) << ex.control;
  }
}

TEST(TrainingExamples, InputLayout) {
  EXPECT_EQ(assemble_input("[LENGTH5] [SEP] dog [POSITION0]", "Some source."),
            "[LENGTH5] [SEP] dog [POSITION0] [SEP] Some source.");
  EXPECT_EQ(assemble_input("[LENGTH5]", std::nullopt), "[LENGTH5]");
  EXPECT_EQ(assemble_input("", "Some source."), "Some source.");
}

TEST(TrainingExamples, JsonKeyOrder) {
  const TrainingExample ex{"d", "[LENGTH0]", "[LENGTH0]", "x"};
  EXPECT_EQ(training_example_to_json(ex).dump(),
            R"({"doc_id":"d","control":"[LENGTH0]","input":"[LENGTH0]","target":"x"})");
}

// --- eval specs -----------------------------------------------------------

TEST(EvalSpecs, OraclePositionsAreTrue) {
  const auto docs = testing::synthetic_corpus(200, 21);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto batch = build_eval_specs(docs, plain_lists(), n, SpecMode::Oracle, 5);
    for (const auto& s : batch.specs) {
      ASSERT_EQ(s.n_keywords(), n);
      const auto& doc = *std::ranges::find(docs, s.doc_id, &Document::id);
      const auto target = tokenize_words(doc.target);
      ASSERT_EQ(s.spec.length, quantize_length(target.size()));
      ASSERT_NO_THROW(validate(s.spec));
      // Re-derive each position from some occurrence in the target.
      for (const auto& kw : s.spec.keywords) {
        bool found = false;
        for (auto start : find_keyword_occurrences(target, kw.phrase))
          found = found || quantize_position(start, target.size()) == *kw.position;
        ASSERT_TRUE(found);
      }
      ASSERT_TRUE(position_accuracy(target, s.spec));
    }
  }
}

TEST(EvalSpecs, RandomModeKeepsKeywords) {
  const auto docs = testing::synthetic_corpus(300, 22);
  const auto oracle = build_eval_specs(docs, plain_lists(), 2, SpecMode::Oracle, 8);
  const auto random = build_eval_specs(docs, plain_lists(), 2, SpecMode::Random, 8);
  ASSERT_EQ(oracle.specs.size(), random.specs.size());
  std::size_t moved = 0;
  for (std::size_t i = 0; i < oracle.specs.size(); ++i) {
    const auto& a = oracle.specs[i].spec;
    const auto& b = random.specs[i].spec;
    ASSERT_EQ(a.length, b.length);
    ASSERT_EQ(a.keywords.size(), b.keywords.size());
    for (std::size_t k = 0; k < a.keywords.size(); ++k) {
      ASSERT_EQ(a.keywords[k].phrase, b.keywords[k].phrase);
      moved += a.keywords[k].position != b.keywords[k].position ? 1 : 0;
    }
  }
  EXPECT_GT(moved, oracle.specs.size());  // about 90% of 2 * specs
}

TEST(EvalSpecs, SkipsDocsWithoutEnoughCandidates) {
  std::vector<Document> docs = testing::synthetic_corpus(5, 30);
  docs.push_back({"short", std::nullopt, "Hello there"});
  const auto batch = build_eval_specs(docs, plain_lists(), 3, SpecMode::Oracle, 1);
  EXPECT_EQ(batch.skipped(), 1u);
  EXPECT_EQ(batch.skipped_ids, std::vector<std::string>{"short"});
  EXPECT_EQ(batch.specs.size(), 5u);
}

TEST(EvalSpecs, RejectsKeywordCountOutOfRange) {
  const auto docs = testing::synthetic_corpus(3, 1);
  EXPECT_THROW(build_eval_specs(docs, plain_lists(), 0, SpecMode::Oracle, 1), Error);
  EXPECT_THROW(build_eval_specs(docs, plain_lists(), 4, SpecMode::Oracle, 1), Error);
}

TEST(EvalSpecs, IndependentOfWorkerCount) {
  const auto docs = testing::synthetic_corpus(150, 31);
  const auto a = build_eval_specs(docs, plain_lists(), 3, SpecMode::Random, 2, 1);
  const auto b = build_eval_specs(docs, plain_lists(), 3, SpecMode::Random, 2, 6);
  EXPECT_EQ(a.specs, b.specs);
  EXPECT_EQ(a.skipped_ids, b.skipped_ids);
}

TEST(EvalSpecs, JsonRoundTrip) {
  const auto docs = testing::synthetic_corpus(50, 32);
  const auto batch = build_eval_specs(docs, plain_lists(), 2, SpecMode::Random, 2);
  for (const auto& s : batch.specs)
    EXPECT_EQ(eval_spec_from_json(nlohmann::json::parse(eval_spec_to_json(s).dump())), s);
}

TEST(EvalSpecs, JsonLayout) {
  EvalSpec s{"d1", parse_control("[LENGTH50] [SEP] two dogs [POSITION20]"), SpecMode::Oracle};
  EXPECT_EQ(eval_spec_to_json(s).dump(),
            R"({"doc_id":"d1","length":50,"keywords":[{"phrase":"two dogs","position":20}],"mode":"oracle"})");
}

}  // namespace
}  // namespace kwpos
