#include <gtest/gtest.h>

#include <sstream>

#include "ontosense/error.hpp"
#include "ontosense/validation.hpp"
#include "support.hpp"

namespace osn {
namespace {

std::vector<AnnotationRecord> records(const std::vector<std::pair<SenseCode, SenseCode>>& pairs) {
  std::vector<AnnotationRecord> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) out.push_back({"i" + std::to_string(i), pairs[i].first, pairs[i].second});
  return out;
}

TEST(Kappa, HandCase) {
  // 80/100 agreement, both coders 50/50 over two categories.
  std::vector<std::pair<SenseCode, SenseCode>> p;
  for (int i = 0; i < 40; ++i) p.emplace_back(VerbSense::ME, VerbSense::ME);
  for (int i = 0; i < 40; ++i) p.emplace_back(VerbSense::BA, VerbSense::BA);
  for (int i = 0; i < 10; ++i) p.emplace_back(VerbSense::ME, VerbSense::BA);
  for (int i = 0; i < 10; ++i) p.emplace_back(VerbSense::BA, VerbSense::ME);
  auto r = cohen_kappa(records(p));
  EXPECT_EQ(r.n, 100u);
  EXPECT_EQ(r.agreements, 80u);
  EXPECT_NEAR(r.p_o, 0.8, 1e-15);
  EXPECT_NEAR(r.p_e, 0.5, 1e-15);
  EXPECT_NEAR(r.kappa, 0.6, 1e-12);
  EXPECT_EQ(agreement_band(0.6), "moderate");
}

TEST(Kappa, PerfectAgreementIsExactlyOne) {
  auto r = cohen_kappa(records({{VerbSense::ME, VerbSense::ME}, {VerbSense::KK, VerbSense::KK},
                                {VerbSense::GG, VerbSense::GG}}));
  EXPECT_EQ(r.kappa, 1.0);
}

TEST(Kappa, Errors) {
  EXPECT_THROW(cohen_kappa({}), EmptyPopulationError);
  EXPECT_THROW(cohen_kappa(records({{VerbSense::ME, VerbSense::ME}, {VerbSense::ME, VerbSense::ME}})), Error);
  EXPECT_THROW(cohen_kappa(records({{VerbSense::ME, AdverbClass::TMP}})), InvariantError);
}

TEST(Kappa, Bands) {
  EXPECT_EQ(agreement_band(-0.1), "poor");
  EXPECT_EQ(agreement_band(0.1), "slight");
  EXPECT_EQ(agreement_band(0.3), "fair");
  EXPECT_EQ(agreement_band(0.70), "substantial");
  EXPECT_EQ(agreement_band(0.82), "almost perfect");
  EXPECT_EQ(agreement_band(0.91), "almost perfect");
}

TEST(Kappa, MatchesOracleOnRandomSets) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 1 + rng() % 500, cats = 1 + rng() % 7;
    std::vector<AnnotationRecord> recs;
    std::vector<std::pair<std::string, std::string>> raw;
    for (std::size_t i = 0; i < n; ++i) {
      auto a = SenseCode::at(Pos::Verb, rng() % cats);
      auto b = rng() % 2 ? a : SenseCode::at(Pos::Verb, rng() % cats);
      recs.push_back({std::to_string(i), a, b});
      raw.emplace_back(a.code(), b.code());
    }
    auto oracle = test::kappa_oracle(raw);
    if (oracle.p_e == 1.0) {
      EXPECT_THROW(cohen_kappa(recs), Error);
      continue;
    }
    auto r = cohen_kappa(recs);
    EXPECT_NEAR(r.kappa, oracle.kappa, 1e-12);
    EXPECT_NEAR(r.p_o, oracle.p_o, 1e-12);
    EXPECT_NEAR(r.p_e, oracle.p_e, 1e-12);
  }
}

TEST(Annotations, ReadsFixtureAndRejectsBadRows) {
  auto recs = load_annotations(test::fixture("annotations.tsv"));
  EXPECT_EQ(recs.size(), 60u);
  std::istringstream bad("item_id\tlabel_a\tlabel_b\na\tME\tME\nb\tME\n");
  try {
    read_annotations(bad, "a.tsv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream unknown("a\tME\tXX\n");
  EXPECT_THROW(read_annotations(unknown), ParseError);
}

TEST(Annotations, TsvReport) {
  std::ostringstream out;
  write_kappa_tsv({100, 80, 0.8, 0.5, 0.6}, out);
  EXPECT_EQ(out.str(), "n\tagreements\tp_o\tp_e\tkappa\tband\n100\t80\t0.80\t0.50\t0.60\tmoderate\n");
}

TEST(Sampling, ReproducibleAndWithoutReplacement) {
  auto lex = load_lexicon(test::fixture("hi_lexicon.tsv"), Language::Hindi);
  auto a = draw_sample(lex, Pos::Verb, 10, 42);
  auto b = draw_sample(lex, Pos::Verb, 10, 42);
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::set<std::string>(a.begin(), a.end()).size(), 10u);
  EXPECT_NE(a, draw_sample(lex, Pos::Verb, 10, 43));
  EXPECT_EQ(draw_sample(lex, Pos::Adjective, 6, 1).size(), 6u);
  EXPECT_THROW(draw_sample(lex, Pos::Adjective, 7, 1), EmptyPopulationError);
  for (const auto& id : a) EXPECT_NE(id.find(":verb:"), std::string::npos);
}

// Chi-square uniformity of inclusion over 10,000 seeded draws. The critical
// value 21.666 is the 0.99 quantile of chi-square with 9 degrees of freedom.
TEST(Sampling, InclusionIsUniform) {
  std::vector<LexiconEntry> entries;
  for (int i = 0; i < 10; ++i) {
    LexiconEntry e;
    e.lemma = "w" + std::to_string(i);
    e.pos = Pos::Adverb;
    e.primary_sense = AdverbClass::TMP;
    entries.push_back(e);
  }
  Lexicon lex(Language::Hindi, entries);
  std::map<std::string, double> counts;
  const int draws = 10000, n = 3;
  for (int seed = 0; seed < draws; ++seed)
    for (const auto& id : draw_sample(lex, Pos::Adverb, n, static_cast<std::uint64_t>(seed))) counts[id] += 1;
  ASSERT_EQ(counts.size(), 10u);
  const double expected = draws * n / 10.0;
  double chi2 = 0;
  for (const auto& [id, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 21.666);
}

}  // namespace
}  // namespace osn
