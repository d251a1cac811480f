#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontosense/lexicon.hpp"
#include "ontosense/senses.hpp"

namespace osn {

inline constexpr std::size_t kDefaultMinVerbFrequency = 50;

struct Token {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0 = root
  std::string deprel;

  // Attribution key: the lemma, or the form when the lemma column is "_".
  const std::string& key() const { return lemma == "_" || lemma.empty() ? form : lemma; }
};

struct ParsedSentence {
  std::vector<Token> tokens;  // ids 1..n in order
};

// CoNLL-U reader. Comment lines and multiword/empty-node rows are skipped;
// columns 7-10 beyond HEAD/DEPREL are dropped. Throws ParseError with the
// line number on a wrong column count, malformed id, or bad head.
std::vector<ParsedSentence> read_conllu(std::istream& in, const std::string& source = "");
std::vector<ParsedSentence> parse_conllu(const std::filesystem::path& path);

/// Adverb sense-class distribution over the ADV dependents of one verb.
struct AdverbialProfile {
  std::string verb;
  std::size_t verb_freq = 0;
  std::array<std::size_t, kAdverbClassCount> class_counts{};
  std::array<double, kAdverbClassCount> class_percent{};
  std::size_t unknown_adverb_count = 0;

  // True when no ADV dependent could be mapped to a class.
  bool no_known_adverbs() const;
};

// Profiles for every verb lemma with token frequency strictly greater than
// min_freq, sorted by descending frequency then lemma.
std::vector<AdverbialProfile> adverbial_profiles(std::span<const ParsedSentence> corpus, const Lexicon& adverbs,
                                                 std::size_t min_freq = kDefaultMinVerbFrequency);

struct KarakaMatrix {
  using Row = std::array<std::size_t, kKarakaCount>;
  std::array<Row, kVerbSenseCount> counts{};
  std::array<std::array<double, kKarakaCount>, kVerbSenseCount> row_percent{};
  std::size_t edges = 0;          // karaka edges attributed to a lexicon verb
  std::size_t skipped_edges = 0;  // karaka edges on a VERB head absent from the lexicon
};

// Tally of (primary sense of head verb, karaka) over dependency edges
// labelled k1..k8.
KarakaMatrix karaka_matrix(std::span<const ParsedSentence> corpus, const Lexicon& verbs);

struct SenseTypeProfile {
  std::string corpus;
  std::size_t token_total = 0;  // verb tokens with a lexicon entry
  std::array<std::size_t, kVerbSenseCount> counts{};
  std::array<double, kVerbSenseCount> percent{};
  std::size_t out_of_lexicon = 0;
};

SenseTypeProfile sense_type_profile(std::span<const ParsedSentence> corpus, const Lexicon& verbs, std::string name);

// Rebuilds percentages from counts; token_total becomes the count sum.
SenseTypeProfile make_sense_profile(std::string name, const std::array<std::size_t, kVerbSenseCount>& counts,
                                    std::size_t out_of_lexicon = 0);

// Log-likelihood keyness of a category observed count_a times in a corpus of
// total_a items and count_b times in one of total_b items:
//   E1 = total_a (a+b) / (total_a+total_b),  E2 = total_b (a+b) / (total_a+total_b)
//   LL = 2 (a ln(a/E1) + b ln(b/E2)),  with 0 ln 0 = 0.
// Throws Error if a count exceeds its total or both counts are zero.
double log_likelihood(std::uint64_t count_a, std::uint64_t count_b, std::uint64_t total_a, std::uint64_t total_b);

enum class Direction { OverusedInA, OverusedInB, Equal };

std::string_view to_string(Direction d);

struct LLRow {
  VerbSense sense = VerbSense::ME;
  std::size_t count_a = 0;
  std::size_t count_b = 0;
  std::size_t total_a = 0;
  std::size_t total_b = 0;
  double ll = 0.0;
  Direction direction = Direction::Equal;
};

struct LLComparison {
  std::string name_a;
  std::string name_b;
  std::vector<LLRow> rows;  // descending ll; rows[0] is the most indicative sense-type
};

LLComparison compare_corpora(const SenseTypeProfile& a, const SenseTypeProfile& b);

struct AdverbClassSets {
  std::string verb;
  std::vector<AdverbClass> side_a;
  std::vector<AdverbClass> side_b;
};

struct AdverbComparison {
  std::vector<AdverbClassSets> rows;  // verbs present on both sides, by lemma
  std::vector<std::string> only_a;
  std::vector<std::string> only_b;
};

// Per shared verb, the classes with a nonzero percentage on each side.
AdverbComparison author_adverb_comparison(std::span<const AdverbialProfile> a, std::span<const AdverbialProfile> b);

// "Temporal, Measure" style rendering in canonical class order.
std::string join_class_labels(std::span<const AdverbClass> classes);

// TSV reports. Readers accept exactly what the writers emit.
void write_adverbial_profiles(std::span<const AdverbialProfile> profiles, std::ostream& out);
std::vector<AdverbialProfile> read_adverbial_profiles(std::istream& in, const std::string& source = "");
void write_karaka_matrix(const KarakaMatrix& matrix, std::ostream& out);
void write_sense_profile(const SenseTypeProfile& profile, std::ostream& out);
SenseTypeProfile read_sense_profile(std::istream& in, const std::string& source = "");
void write_comparison(const LLComparison& comparison, std::ostream& out);
void write_adverb_comparison(const AdverbComparison& comparison, std::ostream& out);

inline constexpr std::string_view kAdverbialProfileHeader =
    "verb\tfrequency\tTMP\tSPT\tFRC\tMSR\tTMP_count\tSPT_count\tFRC_count\tMSR_count\tunknown_adverbs\tflag";
inline constexpr std::string_view kSenseProfileHeader = "corpus\tsense\tcount\tpercent";

}  // namespace osn
