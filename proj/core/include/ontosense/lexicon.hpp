#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ontosense/senses.hpp"

namespace osn {

struct EntryKey {
  std::string lemma;
  Language language;
  Pos pos;
  int sense_index;

  friend auto operator<=>(const EntryKey&, const EntryKey&) = default;
};

/// One (lemma, language, pos, sense_index) row of the resource.
///
/// Verbs carry an ordered primary/secondary sense-type pair; adverbs and
/// adjectives carry a single class and no secondary.
struct LexiconEntry {
  std::string lemma;
  Language language = Language::Hindi;
  Pos pos = Pos::Verb;
  int sense_index = 1;
  std::string gloss;
  SenseCode primary_sense = VerbSense::ME;
  std::optional<SenseCode> secondary_sense;
  Provenance provenance = Provenance::Manual;
  std::string example;

  EntryKey key() const { return {lemma, language, pos, sense_index}; }

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

// Checks the single-entry invariants (sense codes valid for pos, verb
// primary != secondary, non-verbs without secondary, sense_index >= 1,
// non-empty NFC lemma). Throws InvariantError.
void validate_entry(const LexiconEntry& entry);

// Ordering used for storage and for the TSV writer: (lemma, pos, sense_index).
bool entry_order(const LexiconEntry& a, const LexiconEntry& b);

/// Immutable, validated collection of entries sharing one language.
///
/// Construction enforces every entry invariant plus key uniqueness and
/// contiguous 1..k sense indices per (lemma, pos). Mutation is by building a
/// new Lexicon (see with_entry).
class Lexicon {
 public:
  explicit Lexicon(Language language, std::vector<LexiconEntry> entries = {});

  Language language() const noexcept { return language_; }
  std::span<const LexiconEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // All entries for the lemma (NFC-normalized before matching), optionally
  // restricted to one pos, in (pos, sense_index) order.
  std::vector<LexiconEntry> lookup(std::string_view lemma, std::optional<Pos> pos = std::nullopt) const;

  // Exact-key access. `lemma` must already be NFC.
  const LexiconEntry* find(std::string_view lemma, Pos pos, int sense_index = 1) const;

  // Number of sense indices stored for (lemma, pos); `lemma` must be NFC.
  int sense_count(std::string_view lemma, Pos pos) const;

  // Copy with `entry` inserted, or replacing the entry with the same key.
  Lexicon with_entry(LexiconEntry entry) const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.language_ == b.language_ && a.entries_ == b.entries_;
  }

 private:
  Language language_;
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_lemma_;
};

enum class Which { Primary, Secondary };

std::string_view to_string(Which which);
std::optional<Which> parse_which(std::string_view text);

struct SenseShare {
  SenseCode code;
  std::size_t count = 0;
  double percent = 0.0;
};

struct SenseDistribution {
  Pos pos;
  Which which;
  std::size_t total = 0;
  std::vector<SenseShare> shares;  // every code of the inventory, canonical order
};

// Percentage of entries of `pos` carrying each code. Throws
// EmptyPopulationError when the lexicon has no entries of `pos`.
SenseDistribution sense_distribution(const Lexicon& lexicon, Pos pos, Which which);

// Lexicon TSV interchange.
inline constexpr std::string_view kLexiconHeader =
    "lemma\tlanguage\tpos\tsense_index\tgloss\tprimary_sense\tsecondary_sense\tprovenance\texample";

// Whole-input rejection: any invalid row throws ParseError naming its line.
Lexicon read_lexicon(std::istream& in, Language language, const std::string& source = "");
Lexicon load_lexicon(const std::filesystem::path& path, Language language);

// Rows in entry_order. Throws Error if an entry cannot be represented
// (whitespace in a lemma, tab or newline in a free-text field).
void write_lexicon(const Lexicon& lexicon, std::ostream& out);
void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path);

}  // namespace osn
