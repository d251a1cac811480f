#include "ontosense/senses.hpp"

#include <cctype>
#include <stdexcept>

namespace osn {
namespace {

constexpr std::array<VerbSenseInfo, kVerbSenseCount> kVerbSenses{{
    {VerbSense::ME, "ME", "Means|End", "Do"},
    {VerbSense::BA, "BA", "Before|After", "Move"},
    {VerbSense::KK, "KK", "Know|Known", "Know"},
    {VerbSense::LL, "LL", "Locus|Located", "Is"},
    {VerbSense::PW, "PW", "Part|Whole", "Cut"},
    {VerbSense::WW, "WW", "Wrap|Wrapped", "Cover"},
    {VerbSense::GG, "GG", "Grip|Grasp", "Have"},
}};

constexpr std::array<ClassInfo, kAdverbClassCount> kAdverbClasses{{
    {"TMP", "Temporal"},
    {"SPT", "Spatial"},
    {"FRC", "Force"},
    {"MSR", "Measure"},
}};

constexpr std::array<ClassInfo, kAdjectiveSenseCount> kAdjectiveSenses{{
    {"LOC", "Locational"},
    {"QNT", "Quantity"},
    {"REL", "Relational"},
    {"STR", "Stress"},
    {"JUD", "Judgement"},
    {"PRP", "Property"},
}};

constexpr std::array<ClassInfo, kKarakaCount> kKarakas{{
    {"K1", "kartā"},
    {"K2", "karma"},
    {"K3", "karna"},
    {"K4", "sampradāna"},
    {"K5", "apādān"},
    {"K6", "sambandh"},
    {"K7", "adhikaran"},
    {"K8", "sambodhan"},
}};

}  // namespace

std::span<const VerbSenseInfo> verb_senses() { return kVerbSenses; }
std::span<const ClassInfo> adverb_classes() { return kAdverbClasses; }
std::span<const ClassInfo> adjective_senses() { return kAdjectiveSenses; }
std::span<const ClassInfo> karakas() { return kKarakas; }

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::Verb: return "verb";
    case Pos::Adverb: return "adverb";
    case Pos::Adjective: return "adjective";
  }
  return "?";
}

std::optional<Pos> parse_pos(std::string_view text) {
  if (text == "verb") return Pos::Verb;
  if (text == "adverb") return Pos::Adverb;
  if (text == "adjective") return Pos::Adjective;
  return std::nullopt;
}

std::size_t inventory_size(Pos pos) {
  switch (pos) {
    case Pos::Verb: return kVerbSenseCount;
    case Pos::Adverb: return kAdverbClassCount;
    case Pos::Adjective: return kAdjectiveSenseCount;
  }
  return 0;
}

SenseCode SenseCode::at(Pos pos, std::size_t index) {
  if (index >= inventory_size(pos)) throw std::out_of_range("sense index out of inventory");
  return SenseCode(pos, static_cast<std::uint8_t>(index));
}

std::optional<SenseCode> SenseCode::parse(Pos pos, std::string_view code) {
  for (std::size_t i = 0; i < inventory_size(pos); ++i) {
    SenseCode candidate(pos, static_cast<std::uint8_t>(i));
    if (candidate.code() == code) return candidate;
  }
  return std::nullopt;
}

std::optional<SenseCode> SenseCode::parse_any(std::string_view code) {
  for (Pos pos : {Pos::Verb, Pos::Adverb, Pos::Adjective}) {
    if (auto parsed = parse(pos, code)) return parsed;
  }
  return std::nullopt;
}

std::string_view SenseCode::code() const {
  switch (pos_) {
    case Pos::Verb: return kVerbSenses[index_].code;
    case Pos::Adverb: return kAdverbClasses[index_].code;
    case Pos::Adjective: return kAdjectiveSenses[index_].code;
  }
  return "?";
}

std::string_view SenseCode::label() const {
  switch (pos_) {
    case Pos::Verb: return kVerbSenses[index_].label;
    case Pos::Adverb: return kAdverbClasses[index_].label;
    case Pos::Adjective: return kAdjectiveSenses[index_].label;
  }
  return "?";
}

std::string describe(SenseCode code) {
  std::string out(code.code());
  out += " — ";
  out += code.label();
  if (code.pos() == Pos::Verb) {
    out += " (";
    out += kVerbSenses[code.index()].primitive;
    out += ")";
  }
  return out;
}

std::optional<VerbSense> verb_sense_of(SenseCode code) {
  if (code.pos() != Pos::Verb) return std::nullopt;
  return static_cast<VerbSense>(code.index());
}

std::optional<AdverbClass> adverb_class_of(SenseCode code) {
  if (code.pos() != Pos::Adverb) return std::nullopt;
  return static_cast<AdverbClass>(code.index());
}

std::string_view code_of(Karaka k) { return kKarakas[static_cast<std::size_t>(k)].code; }

std::optional<Karaka> parse_karaka_deprel(std::string_view deprel) {
  if (deprel.size() < 2) return std::nullopt;
  if (deprel[0] != 'k' && deprel[0] != 'K') return std::nullopt;
  const char digit = deprel[1];
  if (digit < '1' || digit > '8') return std::nullopt;
  return static_cast<Karaka>(digit - '1');
}

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::Hindi: return "hi";
    case Language::Telugu: return "te";
    case Language::English: return "en";
  }
  return "?";
}

std::optional<Language> parse_language(std::string_view text) {
  if (text == "hi") return Language::Hindi;
  if (text == "te") return Language::Telugu;
  if (text == "en") return Language::English;
  return std::nullopt;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Manual: return "manual";
    case Provenance::Propagated: return "propagated";
    case Provenance::Crowd: return "crowd";
  }
  return "?";
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  if (text == "manual") return Provenance::Manual;
  if (text == "propagated") return Provenance::Propagated;
  if (text == "crowd") return Provenance::Crowd;
  return std::nullopt;
}

}  // namespace osn
