#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontosense/lexicon.hpp"
#include "ontosense/service/proposal.hpp"

namespace osn::service {

struct StoreState {
  std::uint64_t seq = 0;  // last applied event
  std::map<Language, std::shared_ptr<const Lexicon>> lexicons;
  std::map<std::string, Proposal> proposals;  // ULID ids sort by creation

  std::shared_ptr<const Lexicon> lexicon(Language language) const;

  // Canonical serialization: identical states give identical bytes.
  nlohmann::json to_json() const;
  static StoreState from_json(const nlohmann::json& j);
};

// Applies one logged event. Used for both the online path and replay, so the
// two cannot diverge. Throws Error on an event that does not fit the state.
void apply_event(StoreState& state, const nlohmann::json& event);

// State obtained by replaying an event log from empty.
StoreState replay_log(const std::filesystem::path& log_path);

enum class Decision { Accept, Reject };

std::optional<Decision> parse_decision(std::string_view text);

// Monotonic ULID-style ids: 10 Crockford base32 chars of milliseconds, then
// 16 chars of randomness incremented within the same millisecond.
class UlidGenerator {
 public:
  explicit UlidGenerator(std::uint64_t seed);
  std::string next(std::int64_t unix_ms);

 private:
  std::mt19937_64 rng_;
  std::int64_t last_ms_ = -1;
  std::uint16_t hi_ = 0;  // top 16 of the 80 random bits
  std::uint64_t lo_ = 0;
};

/// Event-sourced store for lexicons and proposals.
///
/// All mutations go through one writer lock: an event is built, applied to a
/// copy of the current state, appended to the JSON-lines log and then the new
/// state is published. Readers take an immutable snapshot without blocking the
/// writer.
class Store {
 public:
  struct Options {
    std::filesystem::path data_dir;
    std::size_t snapshot_every = 100;  // 0 disables snapshots
    std::function<std::int64_t()> clock;  // unix ms; system clock when empty
    std::uint64_t id_seed = 0;            // 0 = random_device
  };

  explicit Store(Options options);

  std::shared_ptr<const StoreState> state() const;

  // Adds the entries of `lexicon` as entry-added events if its language has no
  // entries yet. Returns the number of events written.
  std::size_t seed(const Lexicon& lexicon);

  Proposal submit(const ProposalDraft& draft, const std::string& submitter);
  Proposal review(const std::string& id, Decision decision, const std::string& reviewer);
  Proposal comment(const std::string& id, const std::string& user, const std::string& text);

  // Writes snapshot.json for the current state.
  void write_snapshot();

  std::filesystem::path log_path() const { return options_.data_dir / "events.jsonl"; }
  std::filesystem::path snapshot_path() const { return options_.data_dir / "snapshot.json"; }

 private:
  std::int64_t now_ms() const;
  std::string timestamp(std::int64_t ms) const;
  // Caller holds write_mutex_.
  void commit(nlohmann::json event);

  Options options_;
  mutable std::mutex state_mutex_;
  std::shared_ptr<const StoreState> state_;
  std::mutex write_mutex_;
  std::ofstream log_;
  UlidGenerator ids_;
};

std::string iso8601_utc(std::int64_t unix_ms);

}  // namespace osn::service
