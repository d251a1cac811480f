#pragma once

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

// Item key used by evaluation samples and annotation records: "lemma:pos:sense_index".
std::string item_id(const LexiconEntry& entry);

struct AnnotationRecord {
  std::string item_id;
  SenseCode label_a;
  SenseCode label_b;
};

struct KappaResult {
  std::size_t n = 0;
  std::size_t agreements = 0;
  double p_o = 0.0;
  double p_e = 0.0;
  double kappa = 0.0;
};

// Unweighted Cohen's kappa over any number of categories.
// p_e = sum_k marginal_a(k) * marginal_b(k). Throws EmptyPopulationError for
// no records, InvariantError for mixed inventories, Error when p_e == 1.
KappaResult cohen_kappa(std::span<const AnnotationRecord> records);

// Landis & Koch band name for a kappa value ("substantial", ...).
std::string_view agreement_band(double kappa);

// TSV: item_id<TAB>label_a<TAB>label_b, with an optional header line of exactly that text.
std::vector<AnnotationRecord> read_annotations(std::istream& in, const std::string& source = "");
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);

void write_kappa_tsv(const KappaResult& result, std::ostream& out, int precision = 2);
void write_kappa_text(const KappaResult& result, std::ostream& out, int precision = 2);

// Uniform sample without replacement of n item ids among entries of `pos`,
// reproducible for a given seed. Throws EmptyPopulationError when the
// population is smaller than n.
std::vector<std::string> draw_sample(const Lexicon& lexicon, Pos pos, std::size_t n, std::uint64_t seed);

}  // namespace osn
