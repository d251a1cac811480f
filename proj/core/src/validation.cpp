#include "ontosense/validation.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <limits>
#include <random>

#include "ontosense/error.hpp"

namespace osn {
namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

// Unbiased draw in [0, bound) by rejection; std::uniform_int_distribution is
// implementation-defined, which would tie samples to one standard library.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

}  // namespace

std::string item_id(const LexiconEntry& entry) {
  return entry.lemma + ":" + std::string(to_string(entry.pos)) + ":" + std::to_string(entry.sense_index);
}

KappaResult cohen_kappa(std::span<const AnnotationRecord> records) {
  if (records.empty()) throw EmptyPopulationError("no annotation records");
  const Pos pos = records.front().label_a.pos();
  const std::size_t k = inventory_size(pos);
  std::vector<std::size_t> margin_a(k, 0), margin_b(k, 0);

  KappaResult r;
  r.n = records.size();
  for (const auto& rec : records) {
    if (rec.label_a.pos() != pos || rec.label_b.pos() != pos) {
      throw InvariantError("record '" + rec.item_id + "' mixes sense inventories");
    }
    ++margin_a[rec.label_a.index()];
    ++margin_b[rec.label_b.index()];
    if (rec.label_a == rec.label_b) ++r.agreements;
  }
  const double n = static_cast<double>(r.n);
  r.p_o = static_cast<double>(r.agreements) / n;
  for (std::size_t i = 0; i < k; ++i) {
    r.p_e += (static_cast<double>(margin_a[i]) / n) * (static_cast<double>(margin_b[i]) / n);
  }
  // p_e reaches 1 only when both coders used one single identical category.
  for (std::size_t i = 0; i < k; ++i) {
    if (margin_a[i] == r.n && margin_b[i] == r.n) {
      throw Error("kappa undefined: both coders used only " + std::string(SenseCode::at(pos, i).code()));
    }
  }
  r.kappa = (r.p_o - r.p_e) / (1.0 - r.p_e);
  return r;
}

std::string_view agreement_band(double kappa) {
  if (kappa < 0.0) return "poor";
  if (kappa <= 0.20) return "slight";
  if (kappa <= 0.40) return "fair";
  if (kappa <= 0.60) return "moderate";
  if (kappa <= 0.80) return "substantial";
  return "almost perfect";
}

std::vector<AnnotationRecord> read_annotations(std::istream& in, const std::string& source) {
  std::vector<AnnotationRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "item_id\tlabel_a\tlabel_b") continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw ParseError(source, line_no, "expected 3 tab-separated fields");
    }
    const std::string_view view(line);
    const auto a = SenseCode::parse_any(view.substr(t1 + 1, t2 - t1 - 1));
    const auto b = SenseCode::parse_any(view.substr(t2 + 1));
    if (!a || !b) throw ParseError(source, line_no, "unknown sense code");
    if (a->pos() != b->pos()) throw ParseError(source, line_no, "labels drawn from different inventories");
    if (!out.empty() && out.front().label_a.pos() != a->pos()) {
      throw ParseError(source, line_no, "record inventory differs from earlier records");
    }
    out.push_back({line.substr(0, t1), *a, *b});
  }
  return out;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_annotations(in, path.string());
}

void write_kappa_tsv(const KappaResult& r, std::ostream& out, int precision) {
  out << "n\tagreements\tp_o\tp_e\tkappa\tband\n"
      << r.n << '\t' << r.agreements << '\t' << fixed(r.p_o, precision) << '\t' << fixed(r.p_e, precision) << '\t'
      << fixed(r.kappa, precision) << '\t' << agreement_band(r.kappa) << '\n';
}

void write_kappa_text(const KappaResult& r, std::ostream& out, int precision) {
  out << "items: " << r.n << " (" << r.agreements << " agreements)\n"
      << "observed agreement: " << fixed(r.p_o, precision) << '\n'
      << "expected agreement: " << fixed(r.p_e, precision) << '\n'
      << "Cohen's kappa: " << fixed(r.kappa, precision) << " (" << agreement_band(r.kappa) << ")\n";
}

std::vector<std::string> draw_sample(const Lexicon& lexicon, Pos pos, std::size_t n, std::uint64_t seed) {
  std::vector<std::string> population;
  for (const auto& e : lexicon.entries()) {
    if (e.pos == pos) population.push_back(item_id(e));
  }
  if (population.size() < n) {
    throw EmptyPopulationError("requested " + std::to_string(n) + " items but only " +
                               std::to_string(population.size()) + " " + std::string(to_string(pos)) +
                               " entries exist");
  }
  // Partial Fisher-Yates over the lexicon's deterministic entry order.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(bounded(rng, population.size() - i));
    std::swap(population[i], population[j]);
  }
  population.resize(n);
  return population;
}

}  // namespace osn
