#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace osn {

// Sense inventories. The enumerator order is the canonical reporting order.

enum class VerbSense : std::uint8_t { ME, BA, KK, LL, PW, WW, GG };
enum class AdverbClass : std::uint8_t { TMP, SPT, FRC, MSR };
enum class AdjectiveSense : std::uint8_t { LOC, QNT, REL, STR, JUD, PRP };
enum class Karaka : std::uint8_t { K1, K2, K3, K4, K5, K6, K7, K8 };

inline constexpr std::size_t kVerbSenseCount = 7;
inline constexpr std::size_t kAdverbClassCount = 4;
inline constexpr std::size_t kAdjectiveSenseCount = 6;
inline constexpr std::size_t kKarakaCount = 8;

struct VerbSenseInfo {
  VerbSense sense;
  std::string_view code;
  std::string_view label;
  std::string_view primitive;
};

struct ClassInfo {
  std::string_view code;
  std::string_view label;
};

std::span<const VerbSenseInfo> verb_senses();
std::span<const ClassInfo> adverb_classes();
std::span<const ClassInfo> adjective_senses();
std::span<const ClassInfo> karakas();  // label holds the transliterated name

enum class Pos : std::uint8_t { Verb, Adverb, Adjective };

std::string_view to_string(Pos pos);
std::optional<Pos> parse_pos(std::string_view text);

// The inventory a sense code is drawn from is fixed by the part of speech.
// A SenseCode is an index into the inventory of its pos.
class SenseCode {
 public:
  constexpr SenseCode(VerbSense s) : pos_(Pos::Verb), index_(static_cast<std::uint8_t>(s)) {}
  constexpr SenseCode(AdverbClass c) : pos_(Pos::Adverb), index_(static_cast<std::uint8_t>(c)) {}
  constexpr SenseCode(AdjectiveSense s)
      : pos_(Pos::Adjective), index_(static_cast<std::uint8_t>(s)) {}

  // Parses a code valid for `pos`; nullopt for anything outside that inventory.
  static std::optional<SenseCode> parse(Pos pos, std::string_view code);
  // Parses a code from any inventory (the code sets are disjoint).
  static std::optional<SenseCode> parse_any(std::string_view code);
  // Inventory member by position; index must be < inventory_size(pos).
  static SenseCode at(Pos pos, std::size_t index);

  constexpr Pos pos() const noexcept { return pos_; }
  constexpr std::size_t index() const noexcept { return index_; }

  std::string_view code() const;
  std::string_view label() const;

  friend constexpr auto operator<=>(const SenseCode&, const SenseCode&) = default;

 private:
  constexpr SenseCode(Pos pos, std::uint8_t index) : pos_(pos), index_(index) {}

  Pos pos_;
  std::uint8_t index_;
};

std::size_t inventory_size(Pos pos);

// "ME — Means|End (Do)" style display string.
std::string describe(SenseCode code);

std::optional<VerbSense> verb_sense_of(SenseCode code);
std::optional<AdverbClass> adverb_class_of(SenseCode code);

std::string_view code_of(Karaka k);
// Dependency labels k1..k8, case-insensitive; anything after the digit is ignored ("k7p" -> K7).
std::optional<Karaka> parse_karaka_deprel(std::string_view deprel);

enum class Language : std::uint8_t { Hindi, Telugu, English };

std::string_view to_string(Language lang);
std::optional<Language> parse_language(std::string_view text);

enum class Provenance : std::uint8_t { Manual, Propagated, Crowd };

std::string_view to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view text);

}  // namespace osn
