#include "ontosense/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

#include "ontosense/error.hpp"
#include "ontosense/unicode.hpp"

namespace osn {
namespace {

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

template <typename Int>
std::optional<Int> parse_int(std::string_view text) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

void finish_sentence(std::vector<ParsedSentence>& out, ParsedSentence& current, std::vector<std::size_t>& lines,
                     const std::string& source) {
  if (current.tokens.empty()) return;
  const int n = static_cast<int>(current.tokens.size());
  for (std::size_t i = 0; i < current.tokens.size(); ++i) {
    const Token& t = current.tokens[i];
    if (t.head < 0 || t.head > n) {
      throw ParseError(source, lines[i],
                       "head " + std::to_string(t.head) + " out of range 0.." + std::to_string(n));
    }
  }
  out.push_back(std::move(current));
  current = ParsedSentence{};
  lines.clear();
}

const LexiconEntry* verb_entry(const Lexicon& lexicon, const Token& token) {
  return lexicon.find(token.key(), Pos::Verb, 1);
}

}  // namespace

std::vector<ParsedSentence> read_conllu(std::istream& in, const std::string& source) {
  std::vector<ParsedSentence> out;
  ParsedSentence current;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish_sentence(out, current, lines, source);
      continue;
    }
    if (line[0] == '#') continue;
    if (!unicode::is_valid_utf8(line)) throw ParseError(source, line_no, "invalid UTF-8");
    const auto f = split_tabs(line);
    if (f.size() != 10) throw ParseError(source, line_no, "expected 10 columns, found " + std::to_string(f.size()));

    const std::string_view id = f[0];
    const auto dash = id.find('-');
    const auto dot = id.find('.');
    if (dash != std::string_view::npos || dot != std::string_view::npos) {
      const auto sep = dash != std::string_view::npos ? dash : dot;
      if (!parse_int<int>(id.substr(0, sep)) || !parse_int<int>(id.substr(sep + 1))) {
        throw ParseError(source, line_no, "malformed id '" + std::string(id) + "'");
      }
      continue;  // multiword token range or empty node
    }
    const auto number = parse_int<int>(id);
    const int expected = static_cast<int>(current.tokens.size()) + 1;
    if (!number || *number < 1) throw ParseError(source, line_no, "malformed id '" + std::string(id) + "'");
    if (*number != expected) {
      throw ParseError(source, line_no,
                       "id " + std::to_string(*number) + " out of sequence, expected " + std::to_string(expected));
    }
    const auto head = parse_int<int>(f[6]);
    if (!head) throw ParseError(source, line_no, "malformed head '" + std::string(f[6]) + "'");
    if (*head == *number) throw ParseError(source, line_no, "token " + std::to_string(*number) + " heads itself");

    Token token;
    token.id = *number;
    token.form = unicode::nfc(f[1]);
    token.lemma = unicode::nfc(f[2]);
    token.upos = std::string(f[3]);
    token.head = *head;
    token.deprel = std::string(f[7]);
    current.tokens.push_back(std::move(token));
    lines.push_back(line_no);
  }
  finish_sentence(out, current, lines, source);
  return out;
}

std::vector<ParsedSentence> parse_conllu(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_conllu(in, path.string());
}

bool AdverbialProfile::no_known_adverbs() const {
  for (std::size_t c : class_counts) {
    if (c > 0) return false;
  }
  return true;
}

std::vector<AdverbialProfile> adverbial_profiles(std::span<const ParsedSentence> corpus, const Lexicon& adverbs,
                                                 std::size_t min_freq) {
  if (min_freq < 1) throw Error("min_freq must be >= 1");
  std::unordered_map<std::string, AdverbialProfile> by_verb;
  for (const auto& sentence : corpus) {
    for (const auto& token : sentence.tokens) {
      if (token.upos != "VERB") continue;
      auto& p = by_verb[token.key()];
      p.verb = token.key();
      ++p.verb_freq;
    }
    for (const auto& token : sentence.tokens) {
      if (token.upos != "ADV" || token.head == 0) continue;
      const Token& head = sentence.tokens[static_cast<std::size_t>(token.head - 1)];
      if (head.upos != "VERB") continue;
      auto& p = by_verb[head.key()];
      if (const auto* entry = adverbs.find(token.key(), Pos::Adverb, 1)) {
        ++p.class_counts[entry->primary_sense.index()];
      } else {
        ++p.unknown_adverb_count;
      }
    }
  }

  std::vector<AdverbialProfile> out;
  for (auto& [verb, p] : by_verb) {
    if (p.verb_freq <= min_freq) continue;
    std::size_t known = 0;
    for (std::size_t c : p.class_counts) known += c;
    for (std::size_t i = 0; i < kAdverbClassCount; ++i) p.class_percent[i] = percent(p.class_counts[i], known);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const AdverbialProfile& a, const AdverbialProfile& b) {
    if (a.verb_freq != b.verb_freq) return a.verb_freq > b.verb_freq;
    return a.verb < b.verb;
  });
  return out;
}

KarakaMatrix karaka_matrix(std::span<const ParsedSentence> corpus, const Lexicon& verbs) {
  KarakaMatrix m;
  for (const auto& sentence : corpus) {
    for (const auto& token : sentence.tokens) {
      if (token.head == 0) continue;
      const auto karaka = parse_karaka_deprel(token.deprel);
      if (!karaka) continue;
      const Token& head = sentence.tokens[static_cast<std::size_t>(token.head - 1)];
      if (head.upos != "VERB") continue;
      const auto* entry = verb_entry(verbs, head);
      if (entry == nullptr) {
        ++m.skipped_edges;
        continue;
      }
      ++m.counts[entry->primary_sense.index()][static_cast<std::size_t>(*karaka)];
      ++m.edges;
    }
  }
  for (std::size_t r = 0; r < kVerbSenseCount; ++r) {
    std::size_t total = 0;
    for (std::size_t c : m.counts[r]) total += c;
    for (std::size_t k = 0; k < kKarakaCount; ++k) m.row_percent[r][k] = percent(m.counts[r][k], total);
  }
  return m;
}

SenseTypeProfile make_sense_profile(std::string name, const std::array<std::size_t, kVerbSenseCount>& counts,
                                    std::size_t out_of_lexicon) {
  SenseTypeProfile p;
  p.corpus = std::move(name);
  p.counts = counts;
  p.out_of_lexicon = out_of_lexicon;
  for (std::size_t c : counts) p.token_total += c;
  for (std::size_t i = 0; i < kVerbSenseCount; ++i) p.percent[i] = percent(counts[i], p.token_total);
  return p;
}

SenseTypeProfile sense_type_profile(std::span<const ParsedSentence> corpus, const Lexicon& verbs, std::string name) {
  std::array<std::size_t, kVerbSenseCount> counts{};
  std::size_t missing = 0;
  for (const auto& sentence : corpus) {
    for (const auto& token : sentence.tokens) {
      if (token.upos != "VERB") continue;
      if (const auto* entry = verb_entry(verbs, token)) {
        ++counts[entry->primary_sense.index()];
      } else {
        ++missing;
      }
    }
  }
  return make_sense_profile(std::move(name), counts, missing);
}

double log_likelihood(std::uint64_t count_a, std::uint64_t count_b, std::uint64_t total_a, std::uint64_t total_b) {
  if (count_a > total_a || count_b > total_b) throw Error("category count exceeds corpus total");
  if (count_a + count_b == 0) throw Error("category absent from both corpora");
  // Exact proportionality check in integers; the float path can leave a tiny residue.
  if (static_cast<unsigned __int128>(count_a) * total_b == static_cast<unsigned __int128>(count_b) * total_a) {
    return 0.0;
  }
  const double a = static_cast<double>(count_a);
  const double b = static_cast<double>(count_b);
  const double c = static_cast<double>(total_a);
  const double d = static_cast<double>(total_b);
  const double e1 = c * (a + b) / (c + d);
  const double e2 = d * (a + b) / (c + d);
  double ll = 0.0;
  if (count_a > 0) ll += a * std::log(a / e1);
  if (count_b > 0) ll += b * std::log(b / e2);
  return std::max(0.0, 2.0 * ll);
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::OverusedInA: return "overused-in-A";
    case Direction::OverusedInB: return "overused-in-B";
    case Direction::Equal: return "equal";
  }
  return "?";
}

LLComparison compare_corpora(const SenseTypeProfile& a, const SenseTypeProfile& b) {
  if (a.token_total == 0) throw EmptyPopulationError("profile '" + a.corpus + "' has no attributed verb tokens");
  if (b.token_total == 0) throw EmptyPopulationError("profile '" + b.corpus + "' has no attributed verb tokens");
  LLComparison cmp{a.corpus, b.corpus, {}};
  for (std::size_t i = 0; i < kVerbSenseCount; ++i) {
    LLRow row;
    row.sense = static_cast<VerbSense>(i);
    row.count_a = a.counts[i];
    row.count_b = b.counts[i];
    row.total_a = a.token_total;
    row.total_b = b.token_total;
    if (row.count_a + row.count_b > 0) {
      row.ll = log_likelihood(row.count_a, row.count_b, row.total_a, row.total_b);
      const auto lhs = static_cast<unsigned __int128>(row.count_a) * row.total_b;
      const auto rhs = static_cast<unsigned __int128>(row.count_b) * row.total_a;
      row.direction = lhs > rhs ? Direction::OverusedInA : lhs < rhs ? Direction::OverusedInB : Direction::Equal;
    }
    cmp.rows.push_back(row);
  }
  std::stable_sort(cmp.rows.begin(), cmp.rows.end(), [](const LLRow& x, const LLRow& y) { return x.ll > y.ll; });
  return cmp;
}

AdverbComparison author_adverb_comparison(std::span<const AdverbialProfile> a, std::span<const AdverbialProfile> b) {
  auto classes = [](const AdverbialProfile& p) {
    std::vector<AdverbClass> out;
    for (std::size_t i = 0; i < kAdverbClassCount; ++i) {
      if (p.class_percent[i] > 0.0) out.push_back(static_cast<AdverbClass>(i));
    }
    return out;
  };
  std::map<std::string, const AdverbialProfile*> side_b;
  for (const auto& p : b) side_b[p.verb] = &p;
  std::map<std::string, const AdverbialProfile*> side_a;
  for (const auto& p : a) side_a[p.verb] = &p;

  AdverbComparison cmp;
  for (const auto& [verb, pa] : side_a) {
    const auto it = side_b.find(verb);
    if (it == side_b.end()) {
      cmp.only_a.push_back(verb);
      continue;
    }
    cmp.rows.push_back({verb, classes(*pa), classes(*it->second)});
  }
  for (const auto& [verb, pb] : side_b) {
    if (!side_a.contains(verb)) cmp.only_b.push_back(verb);
  }
  return cmp;
}

std::string join_class_labels(std::span<const AdverbClass> classes) {
  std::string out;
  for (AdverbClass c : classes) {
    if (!out.empty()) out += ", ";
    out += SenseCode(c).label();
  }
  return out.empty() ? std::string("-") : out;
}

void write_adverbial_profiles(std::span<const AdverbialProfile> profiles, std::ostream& out) {
  out << kAdverbialProfileHeader << '\n';
  for (const auto& p : profiles) {
    out << p.verb << '\t' << p.verb_freq;
    for (double v : p.class_percent) out << '\t' << fixed(v, 2);
    for (std::size_t c : p.class_counts) out << '\t' << c;
    out << '\t' << p.unknown_adverb_count << '\t' << (p.no_known_adverbs() ? "no_known_adverbs" : "") << '\n';
  }
}

std::vector<AdverbialProfile> read_adverbial_profiles(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kAdverbialProfileHeader) {
    throw ParseError(source, 1, "not an adverbial profile table");
  }
  std::vector<AdverbialProfile> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() != 12) throw ParseError(source, line_no, "expected 12 fields, found " + std::to_string(f.size()));
    AdverbialProfile p;
    p.verb = std::string(f[0]);
    const auto freq = parse_int<std::size_t>(f[1]);
    if (!freq) throw ParseError(source, line_no, "malformed frequency");
    p.verb_freq = *freq;
    std::size_t known = 0;
    for (std::size_t i = 0; i < kAdverbClassCount; ++i) {
      const auto c = parse_int<std::size_t>(f[6 + i]);
      if (!c) throw ParseError(source, line_no, "malformed class count");
      p.class_counts[i] = *c;
      known += *c;
    }
    const auto unknown = parse_int<std::size_t>(f[10]);
    if (!unknown) throw ParseError(source, line_no, "malformed unknown_adverbs count");
    p.unknown_adverb_count = *unknown;
    for (std::size_t i = 0; i < kAdverbClassCount; ++i) p.class_percent[i] = percent(p.class_counts[i], known);
    out.push_back(std::move(p));
  }
  return out;
}

void write_karaka_matrix(const KarakaMatrix& matrix, std::ostream& out) {
  out << "sense\tkaraka\tcount\trow_percent\n";
  for (std::size_t r = 0; r < kVerbSenseCount; ++r) {
    for (std::size_t k = 0; k < kKarakaCount; ++k) {
      out << SenseCode(static_cast<VerbSense>(r)).code() << '\t' << code_of(static_cast<Karaka>(k)) << '\t'
          << matrix.counts[r][k] << '\t' << fixed(matrix.row_percent[r][k], 2) << '\n';
    }
  }
  out << "# edges\t" << matrix.edges << '\n' << "# skipped_edges\t" << matrix.skipped_edges << '\n';
}

void write_sense_profile(const SenseTypeProfile& profile, std::ostream& out) {
  out << kSenseProfileHeader << '\n';
  for (std::size_t i = 0; i < kVerbSenseCount; ++i) {
    out << profile.corpus << '\t' << SenseCode(static_cast<VerbSense>(i)).code() << '\t' << profile.counts[i] << '\t'
        << fixed(profile.percent[i], 3) << '\n';
  }
  out << "# token_total\t" << profile.token_total << '\n' << "# out_of_lexicon\t" << profile.out_of_lexicon << '\n';
}

SenseTypeProfile read_sense_profile(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kSenseProfileHeader) throw ParseError(source, 1, "not a sense-type profile");
  std::array<std::size_t, kVerbSenseCount> counts{};
  std::array<bool, kVerbSenseCount> seen{};
  std::optional<std::string> name;
  std::size_t out_of_lexicon = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto f = split_tabs(line);
      if (f.size() == 2 && f[0] == "# out_of_lexicon") {
        if (auto n = parse_int<std::size_t>(f[1])) out_of_lexicon = *n;
      }
      continue;
    }
    const auto f = split_tabs(line);
    if (f.size() != 4) throw ParseError(source, line_no, "expected 4 fields, found " + std::to_string(f.size()));
    if (name && *name != f[0]) throw ParseError(source, line_no, "mixed corpus names in one profile");
    name = std::string(f[0]);
    const auto code = SenseCode::parse(Pos::Verb, f[1]);
    if (!code) throw ParseError(source, line_no, "unknown verb sense code '" + std::string(f[1]) + "'");
    if (seen[code->index()]) throw ParseError(source, line_no, "duplicate sense " + std::string(f[1]));
    seen[code->index()] = true;
    const auto count = parse_int<std::size_t>(f[2]);
    if (!count) throw ParseError(source, line_no, "malformed count");
    counts[code->index()] = *count;
  }
  if (!name) throw ParseError(source, line_no, "profile has no rows");
  return make_sense_profile(*name, counts, out_of_lexicon);
}

void write_comparison(const LLComparison& cmp, std::ostream& out) {
  out << "sense\tlabel\t" << cmp.name_a << "_count\t" << cmp.name_a << "_percent\t" << cmp.name_b << "_count\t"
      << cmp.name_b << "_percent\tlog_likelihood\tdirection\n";
  for (const auto& row : cmp.rows) {
    const SenseCode code(row.sense);
    std::string direction = "equal";
    if (row.direction == Direction::OverusedInA) direction = "overused-in-" + cmp.name_a;
    if (row.direction == Direction::OverusedInB) direction = "overused-in-" + cmp.name_b;
    out << code.code() << '\t' << code.label() << '\t' << row.count_a << '\t'
        << fixed(percent(row.count_a, row.total_a), 3) << '\t' << row.count_b << '\t'
        << fixed(percent(row.count_b, row.total_b), 3) << '\t' << fixed(row.ll, 2) << '\t' << direction << '\n';
  }
}

void write_adverb_comparison(const AdverbComparison& cmp, std::ostream& out) {
  out << "verb\tclasses_a\tclasses_b\n";
  for (const auto& row : cmp.rows) {
    out << row.verb << '\t' << join_class_labels(row.side_a) << '\t' << join_class_labels(row.side_b) << '\n';
  }
  for (const auto& verb : cmp.only_a) out << "# only_in_a\t" << verb << '\n';
  for (const auto& verb : cmp.only_b) out << "# only_in_b\t" << verb << '\n';
}

}  // namespace osn
