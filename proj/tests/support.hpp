#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace osn::test {

namespace fs = std::filesystem;

inline fs::path fixture(const std::string& name) { return fs::path(OSN_FIXTURE_DIR) / name; }

inline std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = fs::temp_directory_path() / ("ontosense-test-" + std::to_string(rng()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// ---- oracles -------------------------------------------------------------
// Written against the textbook definitions only; they share no code with the
// library.

struct KappaOracle {
  double p_o;
  double p_e;
  double kappa;
};

inline KappaOracle kappa_oracle(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::map<std::string, std::map<std::string, long double>> table;
  std::set<std::string> cats;
  for (const auto& [a, b] : pairs) {
    table[a][b] += 1;
    cats.insert(a);
    cats.insert(b);
  }
  const long double n = pairs.size();
  long double diag = 0, pe = 0;
  for (const auto& c : cats) {
    diag += table[c][c];
    long double row = 0, col = 0;
    for (const auto& d : cats) {
      row += table[c][d];
      col += table[d][c];
    }
    pe += (row / n) * (col / n);
  }
  const long double po = diag / n;
  return {static_cast<double>(po), static_cast<double>(pe), static_cast<double>((po - pe) / (1 - pe))};
}

inline double ll_oracle(long double a, long double b, long double c, long double d) {
  const long double e1 = c * (a + b) / (c + d);
  const long double e2 = d * (a + b) / (c + d);
  long double ll = 0;
  if (a > 0) ll += a * std::log(a / e1);
  if (b > 0) ll += b * std::log(b / e2);
  return static_cast<double>(2 * ll);
}

struct OracleVector {
  std::string word;
  std::vector<double> v;
};

struct OracleLabel {
  std::string word;
  std::string code;
};

struct OracleVerdict {
  bool proposal = false;
  std::string sense;
  bool tie = false;
  std::vector<std::pair<std::string, long double>> members;  // word, cosine (unordered)
  // Set when a cosine sits within 1e-9 of tau, or two count-tied senses have
  // sums within 1e-9 without identical member vectors. Floating-point rounding
  // decides such cases, so callers skip them.
  bool ambiguous = false;
};

inline long double oracle_cosine(const std::vector<double>& x, const std::vector<double>& y) {
  long double dot = 0, nx = 0, ny = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += static_cast<long double>(x[i]) * y[i];
    nx += static_cast<long double>(x[i]) * x[i];
    ny += static_cast<long double>(y[i]) * y[i];
  }
  return dot / std::sqrt(nx * ny);
}

// Majority vote over every labeled word at cosine >= tau; ties by summed
// cosine, then alphabetically smallest code.
inline OracleVerdict propagation_oracle(const std::vector<OracleVector>& space, const std::string& target,
                                        const std::vector<OracleLabel>& labels, double tau, std::size_t min_cluster) {
  std::map<std::string, const std::vector<double>*> vec;
  for (const auto& w : space) vec[w.word] = &w.v;
  OracleVerdict out;
  const auto& t = *vec.at(target);
  std::map<std::string, std::pair<int, long double>> tally;
  std::map<std::string, std::multiset<std::vector<double>>> members_of;
  for (const auto& l : labels) {
    if (l.word == target || !vec.count(l.word)) continue;
    const auto& v = *vec[l.word];
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) continue;
    const long double c = oracle_cosine(t, v);
    if (std::fabs(c - tau) < 1e-9L) out.ambiguous = true;
    if (c >= tau) {
      out.members.emplace_back(l.word, c);
      members_of[l.code].insert(v);
      tally[l.code].first += 1;
      tally[l.code].second += c;
    }
  }
  if (out.members.empty() || out.members.size() < min_cluster) return out;
  int top = 0;
  for (const auto& [code, v] : tally) top = std::max(top, v.first);
  std::vector<std::pair<std::string, long double>> tied;
  for (const auto& [code, v] : tally)
    if (v.first == top) tied.emplace_back(code, v.second);
  for (std::size_t i = 0; i < tied.size(); ++i)
    for (std::size_t j = i + 1; j < tied.size(); ++j) {
      const bool close = std::fabs(tied[i].second - tied[j].second) < 1e-9L;
      if (close && members_of[tied[i].first] != members_of[tied[j].first]) out.ambiguous = true;
    }
  auto same = [&](const auto& x, const auto& y) { return members_of[x.first] == members_of[y.first]; };
  std::sort(tied.begin(), tied.end(), [&](const auto& x, const auto& y) {
    if (!same(x, y)) return x.second > y.second;
    return x.first < y.first;
  });
  out.proposal = true;
  out.sense = tied.front().first;
  out.tie = tied.size() > 1;
  return out;
}

// Flat scan of a CoNLL-U file: per sentence, map id -> columns, then tally.
struct CorpusTally {
  std::map<std::string, std::size_t> verb_freq;
  std::map<std::string, std::array<std::size_t, 4>> adverb_classes;  // TMP SPT FRC MSR
  std::map<std::string, std::size_t> unknown_adverbs;
  std::array<std::array<std::size_t, 8>, 7> karaka{};  // ME BA KK LL PW WW GG x K1..K8
  std::size_t skipped_karaka = 0;
};

// Reads (lemma, pos, sense_index 1) -> primary code from a lexicon TSV by hand.
inline std::map<std::pair<std::string, std::string>, std::string> raw_primary_senses(const fs::path& lexicon) {
  std::map<std::pair<std::string, std::string>, std::string> out;
  std::ifstream in(lexicon, std::ios::binary);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    auto cols = split(line, '\t');
    if (cols.size() == 9 && cols[3] == "1") out[{cols[0], cols[2]}] = cols[5];
  }
  return out;
}

inline CorpusTally flat_tally(const fs::path& conllu, const fs::path& lexicon) {
  static const std::vector<std::string> verb_codes = {"ME", "BA", "KK", "LL", "PW", "WW", "GG"};
  static const std::vector<std::string> adverb_codes = {"TMP", "SPT", "FRC", "MSR"};
  const auto senses = raw_primary_senses(lexicon);
  CorpusTally t;
  std::ifstream in(conllu, std::ios::binary);
  std::map<std::string, std::vector<std::string>> rows;
  auto flush = [&] {
    auto key = [](const std::vector<std::string>& r) { return r[2] == "_" ? r[1] : r[2]; };
    for (const auto& [id, r] : rows)
      if (r[3] == "VERB") ++t.verb_freq[key(r)];
    for (const auto& [id, r] : rows) {
      if (r[6] == "0" || !rows.count(r[6])) continue;
      const auto& head = rows[r[6]];
      if (head[3] != "VERB") continue;
      if (r[3] == "ADV") {
        auto s = senses.find({key(r), "adverb"});
        auto& counts = t.adverb_classes[key(head)];
        if (s == senses.end()) {
          ++t.unknown_adverbs[key(head)];
        } else {
          auto idx = std::find(adverb_codes.begin(), adverb_codes.end(), s->second) - adverb_codes.begin();
          ++counts[static_cast<std::size_t>(idx)];
        }
      }
      const auto& rel = r[7];
      if (rel.size() >= 2 && (rel[0] == 'k' || rel[0] == 'K') && rel[1] >= '1' && rel[1] <= '8') {
        auto s = senses.find({key(head), "verb"});
        if (s == senses.end()) {
          ++t.skipped_karaka;
        } else {
          auto v = std::find(verb_codes.begin(), verb_codes.end(), s->second) - verb_codes.begin();
          ++t.karaka[static_cast<std::size_t>(v)][static_cast<std::size_t>(rel[1] - '1')];
        }
      }
    }
    rows.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols[0].find_first_of("-.") != std::string::npos) continue;
    rows[cols[0]] = cols;
  }
  flush();
  return t;
}

}  // namespace osn::test
