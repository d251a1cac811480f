#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

namespace osn {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ontosense");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return test::fixture(name).string(); }
std::string golden(const std::string& name) { return test::slurp(std::filesystem::path(OSN_GOLDEN_DIR) / name); }

TEST(Cli, LexiconValidate) {
  auto r = run({"lexicon", "validate", "--lexicon", fx("hi_lexicon.tsv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok\t61 entries\tverb=38\tadverb=17\tadjective=6\n");
}

TEST(Cli, LexiconValidateReportsLine) {
  test::TempDir dir;
  auto text = test::slurp(test::fixture("hi_lexicon.tsv"));
  text += "broken\thi\tverb\t1\tg\tME\tME\tmanual\t\n";
  test::spit(dir / "bad.tsv", text);
  auto r = run({"lexicon", "validate", "--lexicon", (dir / "bad.tsv").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bad.tsv:63:"), std::string::npos) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, GoldenOutputs) {
  struct Case {
    std::vector<std::string> args;
    std::string file;
  };
  const std::vector<Case> cases = {
      {{"lexicon", "stats", "--lexicon", fx("hi_lexicon.tsv"), "--pos", "verb", "--which", "primary"}, "stats_verb.tsv"},
      {{"propagate", "--lexicon", fx("hi_lexicon.tsv"), "--vectors", fx("hi_vectors.txt"), "--targets",
        fx("targets_verb.txt"), "--tau", "0.7", "--gold", fx("hi_gold.tsv")},
       "propagate_verb.tsv"},
      {{"propagate", "--lexicon", fx("hi_lexicon.tsv"), "--vectors", fx("hi_vectors.txt"), "--targets",
        fx("targets_adverb.txt"), "--pos", "adverb", "--gold", fx("hi_gold.tsv")},
       "propagate_adverb.tsv"},
      {{"compare", fx("novel.profile.tsv"), fx("news.profile.tsv")}, "compare.tsv"},
      {{"kappa", fx("annotations.tsv")}, "kappa.tsv"},
      {{"sample", "--lexicon", fx("hi_lexicon.tsv"), "--pos", "verb", "--n", "5", "--seed", "42"}, "sample.tsv"},
      {{"profile-adverbs", "--lexicon", fx("hi_lexicon.tsv"), "--corpus", fx("corpus100.conllu")}, "adverbs.tsv"},
      {{"karaka", "--lexicon", fx("hi_lexicon.tsv"), "--corpus", fx("corpus100.conllu")}, "karaka.tsv"},
      {{"profile-senses", "--lexicon", fx("hi_lexicon.tsv"), "--corpus", fx("corpus100.conllu"), "--name", "fixture"},
       "senses.tsv"},
  };
  for (const auto& c : cases) {
    auto first = run(c.args);
    ASSERT_EQ(first.code, 0) << c.file << ": " << first.err;
    EXPECT_EQ(first.out, golden(c.file)) << c.file;
    EXPECT_EQ(run(c.args).out, first.out) << c.file;
  }
}

TEST(Cli, ProfilesFeedCompare) {
  test::TempDir dir;
  const auto a = (dir / "a.tsv").string(), b = (dir / "b.tsv").string();
  ASSERT_EQ(run({"profile-adverbs", "--lexicon", fx("hi_lexicon.tsv"), "--corpus", fx("corpus100.conllu"), "--min-freq",
                 "10", "--out", a})
                .code,
            0);
  ASSERT_EQ(run({"profile-adverbs", "--lexicon", fx("hi_lexicon.tsv"), "--corpus", fx("corpus100.conllu"), "--min-freq",
                 "50", "--out", b})
                .code,
            0);
  auto r = run({"compare", a, b});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("calanā"), std::string::npos);
  EXPECT_NE(r.out.find("# only_in_a"), std::string::npos);

  const auto s = (dir / "s.tsv").string();
  ASSERT_EQ(run({"profile-senses", "--lexicon", fx("hi_lexicon.tsv"), "--corpus", fx("corpus100.conllu"), "--out", s})
                .code,
            0);
  EXPECT_EQ(run({"compare", s, a}).code, 1);
}

TEST(Cli, PropagateJsonIsPostable) {
  auto r = run({"propagate", "--lexicon", fx("hi_lexicon.tsv"), "--vectors", fx("hi_vectors.txt"), "--targets",
                fx("targets_verb.txt"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["proposals"].size(), 2u);
  for (const auto& p : j["proposals"]) {
    EXPECT_EQ(p["source"], "propagation");
    EXPECT_FALSE(p["example"].get<std::string>().empty());
    EXPECT_TRUE(p["evidence"].contains("members"));
  }
}

TEST(Cli, MinFreqDefaultIsStrict) {
  auto r = run({"profile-adverbs", "--lexicon", fx("hi_lexicon.tsv"), "--corpus", fx("corpus100.conllu")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("calanā\t51\t"), std::string::npos);
  EXPECT_EQ(r.out.find("likhanā"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"kappa", "--bogus", "x"}).code, 2);
  EXPECT_EQ(run({"lexicon"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, FailuresExitOne) {
  EXPECT_EQ(run({"kappa", "/nonexistent.tsv"}).code, 1);
  EXPECT_EQ(run({"lexicon", "stats", "--lexicon", fx("hi_lexicon.tsv"), "--pos", "noun"}).code, 1);
  EXPECT_EQ(run({"lexicon", "stats", "--lexicon", fx("hi_lexicon.tsv"), "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"sample", "--lexicon", fx("hi_lexicon.tsv"), "--pos", "adjective", "--n", "99"}).code, 1);
  EXPECT_EQ(run({"propagate", "--lexicon", fx("hi_lexicon.tsv")}).code, 1);
  auto r = run({"serve"});
  EXPECT_EQ(r.code, 1);
}

}  // namespace
}  // namespace osn
