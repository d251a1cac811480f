#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontosense/embeddings.hpp"
#include "ontosense/lexicon.hpp"
#include "ontosense/senses.hpp"

namespace osn::service {

enum class ProposalStatus { Pending, Accepted, Rejected };
enum class ProposalSource { Crowd, Propagation };

std::string_view to_string(ProposalStatus s);
std::optional<ProposalStatus> parse_status(std::string_view text);
std::string_view to_string(ProposalSource s);
std::optional<ProposalSource> parse_source(std::string_view text);

struct Comment {
  std::string user;
  std::string timestamp;  // ISO-8601 UTC, server clock
  std::string text;

  friend bool operator==(const Comment&, const Comment&) = default;
};

/// A suggested sense assignment awaiting manual review.
struct Proposal {
  std::string id;
  std::string lemma;
  Language language = Language::Hindi;
  Pos pos = Pos::Verb;
  int sense_index = 1;
  std::string gloss;
  SenseCode proposed_primary = VerbSense::ME;
  std::optional<SenseCode> proposed_secondary;
  std::string example;
  std::string submitter;
  ProposalSource source = ProposalSource::Crowd;
  ProposalStatus status = ProposalStatus::Pending;
  std::string reviewer;
  std::string submitted_at;
  std::vector<Comment> comments;
  nlohmann::json evidence;  // similarity cluster for propagation proposals; null otherwise

  // The entry an accept would write.
  LexiconEntry to_entry() const;

  friend bool operator==(const Proposal&, const Proposal&) = default;
};

// Client-supplied part of a proposal (POST /proposals body).
struct ProposalDraft {
  std::string lemma;
  Language language = Language::Hindi;
  Pos pos = Pos::Verb;
  int sense_index = 1;
  std::string gloss;
  SenseCode primary = VerbSense::ME;
  std::optional<SenseCode> secondary;
  std::string example;
  ProposalSource source = ProposalSource::Crowd;
  nlohmann::json evidence;
};

nlohmann::json to_json(const LexiconEntry& entry);
LexiconEntry entry_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Proposal& p);
Proposal proposal_from_json(const nlohmann::json& j);

// Parses and validates a POST body. Throws ServiceError(400) describing the
// first problem.
ProposalDraft draft_from_json(const nlohmann::json& j);

// Draft for a propagation outcome, carrying the similarity cluster as
// evidence. Verbs also need a secondary sense: the most frequent secondary
// sense among the cluster members' lexicon entries that differs from the
// proposed primary, falling back to the runner-up primary vote.
ProposalDraft draft_from_propagation(const PropagationResult& result, const Lexicon& lexicon, Language language);
nlohmann::json evidence_json(const PropagationResult& result);
nlohmann::json draft_to_json(const ProposalDraft& draft);

}  // namespace osn::service
