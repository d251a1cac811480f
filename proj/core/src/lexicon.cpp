#include "ontosense/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ontosense/error.hpp"
#include "ontosense/unicode.hpp"

namespace osn {
namespace {

std::string entry_label(const LexiconEntry& e) {
  return e.lemma + "/" + std::string(to_string(e.pos)) + "/" + std::to_string(e.sense_index);
}

// Shared by the constructor and the TSV reader: returns the first key whose
// sense_index range is not 1..k, together with the offending index.
struct Gap {
  std::string lemma;
  Pos pos;
  int index;
};

std::optional<Gap> find_gap(std::span<const LexiconEntry> sorted) {
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    int expected = 1;
    while (j < sorted.size() && sorted[j].lemma == sorted[i].lemma && sorted[j].pos == sorted[i].pos) {
      if (sorted[j].sense_index != expected) return Gap{sorted[j].lemma, sorted[j].pos, sorted[j].sense_index};
      ++expected;
      ++j;
    }
    i = j;
  }
  return std::nullopt;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<int> parse_positive(std::string_view text) {
  if (text.empty()) return std::nullopt;
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) return std::nullopt;
  return value;
}

bool has_control_break(std::string_view text) {
  return text.find_first_of("\t\n\r") != std::string_view::npos;
}

}  // namespace

bool entry_order(const LexiconEntry& a, const LexiconEntry& b) {
  if (a.lemma != b.lemma) return a.lemma < b.lemma;
  if (a.pos != b.pos) return a.pos < b.pos;
  return a.sense_index < b.sense_index;
}

void validate_entry(const LexiconEntry& e) {
  if (e.lemma.empty()) throw InvariantError("empty lemma");
  if (!unicode::is_valid_utf8(e.lemma)) throw InvariantError("lemma is not valid UTF-8");
  if (unicode::nfc(e.lemma) != e.lemma) throw InvariantError("lemma '" + e.lemma + "' is not NFC-normalized");
  if (e.sense_index < 1) throw InvariantError(entry_label(e) + ": sense_index must be >= 1");
  if (e.primary_sense.pos() != e.pos) {
    throw InvariantError(entry_label(e) + ": primary sense " + std::string(e.primary_sense.code()) +
                         " is not a " + std::string(to_string(e.pos)) + " code");
  }
  if (e.pos == Pos::Verb) {
    if (!e.secondary_sense) throw InvariantError(entry_label(e) + ": verb requires a secondary sense");
    if (e.secondary_sense->pos() != Pos::Verb) {
      throw InvariantError(entry_label(e) + ": secondary sense " + std::string(e.secondary_sense->code()) +
                           " is not a verb code");
    }
    if (*e.secondary_sense == e.primary_sense) {
      throw InvariantError(entry_label(e) + ": primary and secondary sense are both " +
                           std::string(e.primary_sense.code()));
    }
  } else if (e.secondary_sense) {
    throw InvariantError(entry_label(e) + ": " + std::string(to_string(e.pos)) + " entries take no secondary sense");
  }
}

Lexicon::Lexicon(Language language, std::vector<LexiconEntry> entries)
    : language_(language), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    validate_entry(e);
    if (e.language != language_) {
      throw InvariantError(entry_label(e) + ": language " + std::string(to_string(e.language)) +
                           " in a " + std::string(to_string(language_)) + " lexicon");
    }
  }
  std::sort(entries_.begin(), entries_.end(), entry_order);
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i - 1].key() == entries_[i].key()) throw InvariantError("duplicate entry " + entry_label(entries_[i]));
  }
  if (auto gap = find_gap(entries_)) {
    throw InvariantError("non-contiguous sense_index " + std::to_string(gap->index) + " for " + gap->lemma + "/" +
                         std::string(to_string(gap->pos)));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) by_lemma_[entries_[i].lemma].push_back(i);
}

std::vector<LexiconEntry> Lexicon::lookup(std::string_view lemma, std::optional<Pos> pos) const {
  std::vector<LexiconEntry> out;
  if (!unicode::is_valid_utf8(lemma)) return out;
  const auto it = by_lemma_.find(unicode::nfc(lemma));
  if (it == by_lemma_.end()) return out;
  for (std::size_t i : it->second) {
    if (!pos || entries_[i].pos == *pos) out.push_back(entries_[i]);
  }
  return out;
}

const LexiconEntry* Lexicon::find(std::string_view lemma, Pos pos, int sense_index) const {
  const auto it = by_lemma_.find(std::string(lemma));
  if (it == by_lemma_.end()) return nullptr;
  for (std::size_t i : it->second) {
    if (entries_[i].pos == pos && entries_[i].sense_index == sense_index) return &entries_[i];
  }
  return nullptr;
}

int Lexicon::sense_count(std::string_view lemma, Pos pos) const {
  const auto it = by_lemma_.find(std::string(lemma));
  if (it == by_lemma_.end()) return 0;
  return static_cast<int>(std::count_if(it->second.begin(), it->second.end(),
                                        [&](std::size_t i) { return entries_[i].pos == pos; }));
}

Lexicon Lexicon::with_entry(LexiconEntry entry) const {
  std::vector<LexiconEntry> next = entries_;
  const auto key = entry.key();
  auto it = std::find_if(next.begin(), next.end(), [&](const LexiconEntry& e) { return e.key() == key; });
  if (it != next.end()) {
    *it = std::move(entry);
  } else {
    next.push_back(std::move(entry));
  }
  return Lexicon(language_, std::move(next));
}

std::string_view to_string(Which which) { return which == Which::Primary ? "primary" : "secondary"; }

std::optional<Which> parse_which(std::string_view text) {
  if (text == "primary") return Which::Primary;
  if (text == "secondary") return Which::Secondary;
  return std::nullopt;
}

SenseDistribution sense_distribution(const Lexicon& lexicon, Pos pos, Which which) {
  if (which == Which::Secondary && pos != Pos::Verb) {
    throw Error("secondary senses exist only for verbs");
  }
  SenseDistribution dist{pos, which, 0, {}};
  std::vector<std::size_t> counts(inventory_size(pos), 0);
  for (const auto& e : lexicon.entries()) {
    if (e.pos != pos) continue;
    const SenseCode code = which == Which::Primary ? e.primary_sense : *e.secondary_sense;
    ++counts[code.index()];
    ++dist.total;
  }
  if (dist.total == 0) {
    throw EmptyPopulationError("no " + std::string(to_string(pos)) + " entries in the " +
                               std::string(to_string(lexicon.language())) + " lexicon");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    dist.shares.push_back({SenseCode::at(pos, i), counts[i],
                           100.0 * static_cast<double>(counts[i]) / static_cast<double>(dist.total)});
  }
  return dist;
}

Lexicon read_lexicon(std::istream& in, Language language, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing header");
  ++line_no;
  if (line != kLexiconHeader) throw ParseError(source, line_no, "malformed header");

  std::vector<LexiconEntry> entries;
  std::vector<std::size_t> lines;
  std::map<EntryKey, std::size_t> seen;

  while (std::getline(in, line)) {
    ++line_no;
    auto fail = [&](const std::string& what) { throw ParseError(source, line_no, what); };
    if (!unicode::is_valid_utf8(line)) fail("invalid UTF-8");
    if (!line.empty() && line.back() == '\r') fail("CR line ending (LF required)");
    const auto f = split_tabs(line);
    if (f.size() != 9) fail("expected 9 fields, found " + std::to_string(f.size()));

    LexiconEntry e;
    if (f[0].empty()) fail("empty lemma");
    if (unicode::contains_whitespace(f[0])) fail("lemma contains whitespace");
    e.lemma = unicode::nfc(f[0]);

    const auto lang = parse_language(f[1]);
    if (!lang) fail("unknown language '" + std::string(f[1]) + "'");
    if (*lang != language) {
      fail("language " + std::string(f[1]) + " does not match lexicon language " + std::string(to_string(language)));
    }
    e.language = *lang;

    const auto pos = parse_pos(f[2]);
    if (!pos) fail("unknown pos '" + std::string(f[2]) + "'");
    e.pos = *pos;

    const auto index = parse_positive(f[3]);
    if (!index) fail("sense_index must be a positive integer, got '" + std::string(f[3]) + "'");
    e.sense_index = *index;

    e.gloss = std::string(f[4]);

    const auto primary = SenseCode::parse(e.pos, f[5]);
    if (!primary) fail("unknown " + std::string(f[2]) + " sense code '" + std::string(f[5]) + "'");
    e.primary_sense = *primary;

    if (e.pos == Pos::Verb) {
      if (f[6].empty()) fail("verb requires a secondary sense");
      const auto secondary = SenseCode::parse(Pos::Verb, f[6]);
      if (!secondary) fail("unknown verb sense code '" + std::string(f[6]) + "'");
      if (*secondary == *primary) fail("primary and secondary sense are both " + std::string(f[5]));
      e.secondary_sense = *secondary;
    } else if (!f[6].empty()) {
      fail(std::string(f[2]) + " entries take no secondary sense");
    }

    const auto prov = parse_provenance(f[7]);
    if (!prov) fail("unknown provenance '" + std::string(f[7]) + "'");
    e.provenance = *prov;
    e.example = std::string(f[8]);

    const auto [it, inserted] = seen.emplace(e.key(), line_no);
    if (!inserted) fail("duplicate entry (first defined on line " + std::to_string(it->second) + ")");

    entries.push_back(std::move(e));
    lines.push_back(line_no);
  }

  // Contiguity is a property of the whole group; report the row holding the
  // first index past the gap.
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return entry_order(entries[a], entries[b]); });
  std::vector<LexiconEntry> sorted;
  sorted.reserve(entries.size());
  for (std::size_t i : order) sorted.push_back(entries[i]);
  if (auto gap = find_gap(sorted)) {
    const auto line_of = seen.at(EntryKey{gap->lemma, language, gap->pos, gap->index});
    throw ParseError(source, line_of,
                     "non-contiguous sense_index " + std::to_string(gap->index) + " for " + gap->lemma);
  }
  return Lexicon(language, std::move(sorted));
}

Lexicon load_lexicon(const std::filesystem::path& path, Language language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_lexicon(in, language, path.string());
}

void write_lexicon(const Lexicon& lexicon, std::ostream& out) {
  // Validate everything before emitting a byte so a failure leaves no partial output.
  for (const auto& e : lexicon.entries()) {
    if (unicode::contains_whitespace(e.lemma)) throw Error("lemma '" + e.lemma + "' contains whitespace");
    if (has_control_break(e.gloss)) throw Error(entry_label(e) + ": gloss contains a tab or line break");
    if (has_control_break(e.example)) throw Error(entry_label(e) + ": example contains a tab or line break");
  }
  out << kLexiconHeader << '\n';
  for (const auto& e : lexicon.entries()) {
    out << e.lemma << '\t' << to_string(e.language) << '\t' << to_string(e.pos) << '\t' << e.sense_index << '\t'
        << e.gloss << '\t' << e.primary_sense.code() << '\t'
        << (e.secondary_sense ? e.secondary_sense->code() : std::string_view{}) << '\t' << to_string(e.provenance)
        << '\t' << e.example << '\n';
  }
}

void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_lexicon(lexicon, buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << buffer.str();
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace osn
