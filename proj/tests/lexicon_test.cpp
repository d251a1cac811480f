#include <gtest/gtest.h>

#include <sstream>

#include "ontosense/error.hpp"
#include "ontosense/lexicon.hpp"
#include "ontosense/unicode.hpp"
#include "support.hpp"

namespace osn {
namespace {

const std::string kHeader(kLexiconHeader);

Lexicon parse(const std::string& body, Language lang = Language::Hindi) {
  std::istringstream in(kHeader + "\n" + body);
  return read_lexicon(in, lang, "t.tsv");
}

std::size_t rejected_line(const std::string& text, Language lang = Language::Hindi) {
  std::istringstream in(text);
  try {
    read_lexicon(in, lang, "t.tsv");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.source(), "t.tsv");
    return e.line();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return 0;
}

LexiconEntry verb(std::string lemma, int idx, VerbSense p, VerbSense s) {
  LexiconEntry e;
  e.lemma = std::move(lemma);
  e.sense_index = idx;
  e.primary_sense = p;
  e.secondary_sense = SenseCode(s);
  e.gloss = "g";
  return e;
}

TEST(Lexicon, LoadsFixture) {
  auto lex = load_lexicon(test::fixture("hi_lexicon.tsv"), Language::Hindi);
  EXPECT_EQ(lex.size(), 61u);
  const auto* khel = lex.find(unicode::nfc("khelanā"), Pos::Verb);
  ASSERT_NE(khel, nullptr);
  EXPECT_EQ(khel->primary_sense, SenseCode(VerbSense::ME));
  EXPECT_EQ(khel->secondary_sense, SenseCode(VerbSense::BA));
}

TEST(Lexicon, LookupRapReturnsThreeSensesInOrder) {
  auto lex = load_lexicon(test::fixture("hi_lexicon.tsv"), Language::Hindi);
  auto rap = lex.lookup("rap", Pos::Verb);
  ASSERT_EQ(rap.size(), 3u);
  EXPECT_EQ(rap[0].secondary_sense, SenseCode(VerbSense::KK));
  EXPECT_EQ(rap[1].secondary_sense, SenseCode(VerbSense::BA));
  EXPECT_EQ(rap[2].secondary_sense, SenseCode(VerbSense::PW));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(rap[i].sense_index, i + 1);
    EXPECT_EQ(rap[i].primary_sense, SenseCode(VerbSense::ME));
  }
  EXPECT_TRUE(lex.lookup("nonexistent").empty());
}

TEST(Lexicon, LookupNormalizesDecomposedInput) {
  auto lex = load_lexicon(test::fixture("hi_lexicon.tsv"), Language::Hindi);
  // "khelanā" spelled with a combining macron.
  auto hits = lex.lookup("khelana\xCC\x84");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].gloss, "play");
}

TEST(Lexicon, AdverbsHaveNoSecondary) {
  auto lex = load_lexicon(test::fixture("hi_lexicon.tsv"), Language::Hindi);
  for (const auto& e : lex.entries()) {
    if (e.pos == Pos::Verb) EXPECT_TRUE(e.secondary_sense.has_value()) << e.lemma;
    else EXPECT_FALSE(e.secondary_sense.has_value()) << e.lemma;
  }
}

TEST(Lexicon, RejectsMalformedHeader) {
  EXPECT_EQ(rejected_line("lemma\tlanguage\tpos\n"), 1u);
  EXPECT_EQ(rejected_line(""), 1u);
}

TEST(Lexicon, RejectsWrongColumnCount) {
  EXPECT_EQ(rejected_line(kHeader + "\nkhelanā\thi\tverb\t1\tplay\tME\tBA\tmanual\t\n" +
                          "calanā\thi\tverb\t1\twalk\tBA\tME\tmanual\n"),
            3u);
}

TEST(Lexicon, RejectsUnknownSenseCode) {
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tverb\t1\tg\tXX\tBA\tmanual\t\n"), 2u);
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tadverb\t1\tg\tME\t\tmanual\t\n"), 2u);
}

TEST(Lexicon, RejectsDuplicateKey) {
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tverb\t1\tg\tME\tBA\tmanual\t\n" + "y\thi\tverb\t1\tg\tME\tBA\tmanual\t\n" +
                          "x\thi\tverb\t1\th\tKK\tBA\tmanual\t\n"),
            4u);
}

TEST(Lexicon, RejectsVerbWithEqualPrimaryAndSecondary) {
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tverb\t1\tg\tME\tBA\tmanual\t\n" + "y\thi\tverb\t1\tg\tGG\tGG\tmanual\t\n"),
            3u);
}

TEST(Lexicon, RejectsNonContiguousSenseIndex) {
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tverb\t1\tg\tME\tBA\tmanual\t\n" + "x\thi\tverb\t3\tg\tME\tKK\tmanual\t\n"),
            3u);
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tverb\t2\tg\tME\tBA\tmanual\t\n"), 2u);
}

TEST(Lexicon, RejectsLemmaWithSpace) {
  EXPECT_EQ(rejected_line(kHeader + "\nkhel na\thi\tverb\t1\tg\tME\tBA\tmanual\t\n"), 2u);
}

TEST(Lexicon, RejectsOtherRowErrors) {
  // missing verb secondary, secondary on adverb, bad pos, bad index, language mismatch, bad provenance
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tverb\t1\tg\tME\t\tmanual\t\n"), 2u);
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tadverb\t1\tg\tTMP\tSPT\tmanual\t\n"), 2u);
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tnoun\t1\tg\tME\tBA\tmanual\t\n"), 2u);
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tverb\tone\tg\tME\tBA\tmanual\t\n"), 2u);
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tverb\t0\tg\tME\tBA\tmanual\t\n"), 2u);
  EXPECT_EQ(rejected_line(kHeader + "\nx\tte\tverb\t1\tg\tME\tBA\tmanual\t\n"), 2u);
  EXPECT_EQ(rejected_line(kHeader + "\nx\thi\tverb\t1\tg\tME\tBA\tguess\t\n"), 2u);
  EXPECT_EQ(rejected_line(kHeader + "\n\thi\tverb\t1\tg\tME\tBA\tmanual\t\n"), 2u);
}

TEST(Lexicon, WholeFileRejectedNotRowSkipped) {
  std::istringstream in(kHeader + "\nx\thi\tverb\t1\tg\tME\tBA\tmanual\t\ny\thi\tverb\t1\tg\tME\tME\tmanual\t\n");
  EXPECT_THROW(read_lexicon(in, Language::Hindi), ParseError);
}

TEST(Lexicon, SaveLoadIdentityOnFixture) {
  auto lex = load_lexicon(test::fixture("hi_lexicon.tsv"), Language::Hindi);
  test::TempDir dir;
  save_lexicon(lex, dir / "out.tsv");
  EXPECT_EQ(load_lexicon(dir / "out.tsv", Language::Hindi), lex);
  EXPECT_EQ(test::slurp(dir / "out.tsv"), test::slurp(test::fixture("hi_lexicon.tsv")));
}

TEST(Lexicon, NormalizesLemmasOnRead) {
  auto lex = parse("khelana\xCC\x84\thi\tverb\t1\tplay\tME\tBA\tmanual\t\n");
  EXPECT_EQ(lex.entries()[0].lemma, "khelan\xC4\x81");
}

TEST(Lexicon, ConstructorEnforcesInvariants) {
  EXPECT_THROW(Lexicon(Language::Hindi, {verb("x", 1, VerbSense::ME, VerbSense::ME)}), InvariantError);
  EXPECT_THROW(Lexicon(Language::Hindi, {verb("x", 2, VerbSense::ME, VerbSense::BA)}), InvariantError);
  EXPECT_THROW(Lexicon(Language::Hindi, {verb("x", 1, VerbSense::ME, VerbSense::BA), verb("x", 1, VerbSense::KK,
                                                                                            VerbSense::BA)}),
               InvariantError);
  auto e = verb("x", 1, VerbSense::ME, VerbSense::BA);
  e.language = Language::Telugu;
  EXPECT_THROW(Lexicon(Language::Hindi, {e}), InvariantError);
}

TEST(Lexicon, WithEntryInsertsOrReplaces) {
  Lexicon lex(Language::Hindi, {verb("b", 1, VerbSense::ME, VerbSense::BA)});
  auto grown = lex.with_entry(verb("a", 1, VerbSense::KK, VerbSense::LL));
  EXPECT_EQ(lex.size(), 1u);
  ASSERT_EQ(grown.size(), 2u);
  EXPECT_EQ(grown.entries()[0].lemma, "a");
  auto replaced = grown.with_entry(verb("b", 1, VerbSense::GG, VerbSense::PW));
  EXPECT_EQ(replaced.size(), 2u);
  EXPECT_EQ(replaced.find("b", Pos::Verb)->primary_sense, SenseCode(VerbSense::GG));
  EXPECT_THROW(grown.with_entry(verb("a", 3, VerbSense::KK, VerbSense::LL)), InvariantError);
}

TEST(Lexicon, WriterRejectsUnrepresentableFields) {
  auto e = verb("x", 1, VerbSense::ME, VerbSense::BA);
  e.gloss = "a\tb";
  Lexicon lex(Language::Hindi, {e});
  std::ostringstream out;
  EXPECT_THROW(write_lexicon(lex, out), Error);
  EXPECT_TRUE(out.str().empty());
}

TEST(Lexicon, VerbPrimaryDistributionSumsTo100) {
  auto lex = load_lexicon(test::fixture("hi_lexicon.tsv"), Language::Hindi);
  auto d = sense_distribution(lex, Pos::Verb, Which::Primary);
  EXPECT_EQ(d.total, 38u);
  ASSERT_EQ(d.shares.size(), 7u);
  double sum = 0;
  std::size_t count = 0;
  for (const auto& s : d.shares) {
    sum += s.percent;
    count += s.count;
  }
  EXPECT_NEAR(sum, 100.0, 1e-9);
  EXPECT_EQ(count, d.total);
  EXPECT_EQ(d.shares[2].code, SenseCode(VerbSense::KK));
  EXPECT_EQ(d.shares[2].count, 9u);
}

TEST(Lexicon, AdverbDistributionHasFourClasses) {
  auto lex = load_lexicon(test::fixture("hi_lexicon.tsv"), Language::Hindi);
  auto d = sense_distribution(lex, Pos::Adverb, Which::Primary);
  EXPECT_EQ(d.shares.size(), 4u);
  EXPECT_EQ(d.total, 17u);
}

TEST(Lexicon, EmptyPopulationIsAnError) {
  Lexicon lex(Language::Hindi, {verb("x", 1, VerbSense::ME, VerbSense::BA)});
  EXPECT_THROW(sense_distribution(lex, Pos::Adjective, Which::Primary), EmptyPopulationError);
  EXPECT_THROW(sense_distribution(Lexicon(Language::Hindi), Pos::Verb, Which::Primary), EmptyPopulationError);
  EXPECT_THROW(sense_distribution(load_lexicon(test::fixture("hi_lexicon.tsv"), Language::Hindi), Pos::Adverb,
                                  Which::Secondary),
               Error);
}

TEST(Lexicon, SecondaryDistribution) {
  Lexicon lex(Language::Hindi,
              {verb("a", 1, VerbSense::ME, VerbSense::BA), verb("b", 1, VerbSense::ME, VerbSense::BA),
               verb("c", 1, VerbSense::BA, VerbSense::GG), verb("d", 1, VerbSense::KK, VerbSense::BA)});
  auto d = sense_distribution(lex, Pos::Verb, Which::Secondary);
  EXPECT_DOUBLE_EQ(d.shares[1].percent, 75.0);
  EXPECT_DOUBLE_EQ(d.shares[6].percent, 25.0);
}

// Property: random valid lexicons survive save/load unchanged.
TEST(LexiconProperty, RandomRoundTrip) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> letters = {"a", "ā", "k", "ṛ", "n", "ś", "ī", "t", "-"};
  for (int round = 0; round < 200; ++round) {
    std::vector<LexiconEntry> entries;
    std::set<std::string> lemmas;
    const int words = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int w = 0; w < words; ++w) {
      std::string lemma;
      const int len = std::uniform_int_distribution<int>(1, 6)(rng);
      for (int i = 0; i < len; ++i) lemma += letters[rng() % letters.size()];
      if (!lemmas.insert(lemma).second) continue;
      for (Pos pos : {Pos::Verb, Pos::Adverb, Pos::Adjective}) {
        if (rng() % 2) continue;
        const int senses = 1 + static_cast<int>(rng() % 3);
        for (int k = 1; k <= senses; ++k) {
          LexiconEntry e;
          e.lemma = lemma;
          e.language = Language::Telugu;
          e.pos = pos;
          e.sense_index = k;
          e.gloss = rng() % 3 ? "gloss " + std::to_string(k) : "";
          e.example = rng() % 2 ? "ek udāharaṇ" : "";
          e.provenance = static_cast<Provenance>(rng() % 3);
          const auto n = inventory_size(pos);
          e.primary_sense = SenseCode::at(pos, rng() % n);
          if (pos == Pos::Verb) e.secondary_sense = SenseCode::at(pos, (e.primary_sense.index() + 1 + rng() % 6) % 7);
          entries.push_back(e);
        }
      }
    }
    std::shuffle(entries.begin(), entries.end(), rng);
    Lexicon lex(Language::Telugu, entries);
    std::ostringstream out;
    write_lexicon(lex, out);
    std::istringstream in(out.str());
    auto back = read_lexicon(in, Language::Telugu);
    ASSERT_EQ(back, lex);
    std::ostringstream again;
    write_lexicon(back, again);
    ASSERT_EQ(again.str(), out.str());
  }
}

}  // namespace
}  // namespace osn
