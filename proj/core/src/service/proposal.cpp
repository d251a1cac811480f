#include "ontosense/service/proposal.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "ontosense/service/errors.hpp"
#include "ontosense/unicode.hpp"

namespace osn::service {

using nlohmann::json;

std::string_view to_string(ProposalStatus s) {
  switch (s) {
    case ProposalStatus::Pending: return "pending";
    case ProposalStatus::Accepted: return "accepted";
    case ProposalStatus::Rejected: return "rejected";
  }
  return "?";
}

std::optional<ProposalStatus> parse_status(std::string_view text) {
  if (text == "pending") return ProposalStatus::Pending;
  if (text == "accepted") return ProposalStatus::Accepted;
  if (text == "rejected") return ProposalStatus::Rejected;
  return std::nullopt;
}

std::string_view to_string(ProposalSource s) { return s == ProposalSource::Crowd ? "crowd" : "propagation"; }

std::optional<ProposalSource> parse_source(std::string_view text) {
  if (text == "crowd") return ProposalSource::Crowd;
  if (text == "propagation") return ProposalSource::Propagation;
  return std::nullopt;
}

LexiconEntry Proposal::to_entry() const {
  LexiconEntry e;
  e.lemma = lemma;
  e.language = language;
  e.pos = pos;
  e.sense_index = sense_index;
  e.gloss = gloss;
  e.primary_sense = proposed_primary;
  e.secondary_sense = proposed_secondary;
  e.provenance = source == ProposalSource::Crowd ? Provenance::Crowd : Provenance::Propagated;
  e.example = example;
  return e;
}

json to_json(const LexiconEntry& e) {
  json j = {
      {"lemma", e.lemma},
      {"language", to_string(e.language)},
      {"pos", to_string(e.pos)},
      {"sense_index", e.sense_index},
      {"gloss", e.gloss},
      {"primary_sense", e.primary_sense.code()},
      {"primary_label", describe(e.primary_sense)},
      {"secondary_sense", e.secondary_sense ? json(e.secondary_sense->code()) : json(nullptr)},
      {"secondary_label", e.secondary_sense ? json(describe(*e.secondary_sense)) : json(nullptr)},
      {"provenance", to_string(e.provenance)},
      {"example", e.example},
  };
  return j;
}

namespace {

template <typename T>
T require(const std::optional<T>& value, const std::string& what) {
  if (!value) throw bad_request(what);
  return *value;
}

std::string string_field(const json& j, const char* key, bool required) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) throw bad_request(std::string("missing field '") + key + "'");
    return {};
  }
  if (!it->is_string()) throw bad_request(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

LexiconEntry entry_from_json(const json& j) {
  LexiconEntry e;
  e.lemma = j.at("lemma").get<std::string>();
  e.language = require(parse_language(j.at("language").get<std::string>()), "bad language");
  e.pos = require(parse_pos(j.at("pos").get<std::string>()), "bad pos");
  e.sense_index = j.at("sense_index").get<int>();
  e.gloss = j.at("gloss").get<std::string>();
  e.primary_sense = require(SenseCode::parse(e.pos, j.at("primary_sense").get<std::string>()), "bad primary sense");
  if (!j.at("secondary_sense").is_null()) {
    e.secondary_sense = require(SenseCode::parse(e.pos, j.at("secondary_sense").get<std::string>()), "bad secondary");
  }
  e.provenance = require(parse_provenance(j.at("provenance").get<std::string>()), "bad provenance");
  e.example = j.at("example").get<std::string>();
  return e;
}

json to_json(const Proposal& p) {
  json comments = json::array();
  for (const auto& c : p.comments) comments.push_back({{"user", c.user}, {"timestamp", c.timestamp}, {"text", c.text}});
  return {
      {"id", p.id},
      {"lemma", p.lemma},
      {"language", to_string(p.language)},
      {"pos", to_string(p.pos)},
      {"sense_index", p.sense_index},
      {"gloss", p.gloss},
      {"proposed_primary", p.proposed_primary.code()},
      {"proposed_secondary", p.proposed_secondary ? json(p.proposed_secondary->code()) : json(nullptr)},
      {"example", p.example},
      {"submitter", p.submitter},
      {"source", to_string(p.source)},
      {"status", to_string(p.status)},
      {"reviewer", p.reviewer},
      {"submitted_at", p.submitted_at},
      {"comments", comments},
      {"evidence", p.evidence},
  };
}

Proposal proposal_from_json(const json& j) {
  Proposal p;
  p.id = j.at("id").get<std::string>();
  p.lemma = j.at("lemma").get<std::string>();
  p.language = require(parse_language(j.at("language").get<std::string>()), "bad language");
  p.pos = require(parse_pos(j.at("pos").get<std::string>()), "bad pos");
  p.sense_index = j.at("sense_index").get<int>();
  p.gloss = j.at("gloss").get<std::string>();
  p.proposed_primary = require(SenseCode::parse(p.pos, j.at("proposed_primary").get<std::string>()), "bad primary");
  if (!j.at("proposed_secondary").is_null()) {
    p.proposed_secondary =
        require(SenseCode::parse(p.pos, j.at("proposed_secondary").get<std::string>()), "bad secondary");
  }
  p.example = j.at("example").get<std::string>();
  p.submitter = j.at("submitter").get<std::string>();
  p.source = require(parse_source(j.at("source").get<std::string>()), "bad source");
  p.status = require(parse_status(j.at("status").get<std::string>()), "bad status");
  p.reviewer = j.at("reviewer").get<std::string>();
  p.submitted_at = j.at("submitted_at").get<std::string>();
  for (const auto& c : j.at("comments")) {
    p.comments.push_back({c.at("user").get<std::string>(), c.at("timestamp").get<std::string>(),
                          c.at("text").get<std::string>()});
  }
  p.evidence = j.at("evidence");
  return p;
}

ProposalDraft draft_from_json(const json& j) {
  if (!j.is_object()) throw bad_request("proposal body must be a JSON object");
  ProposalDraft d;

  const std::string lemma = string_field(j, "lemma", true);
  if (lemma.empty()) throw bad_request("lemma must not be empty");
  if (!unicode::is_valid_utf8(lemma)) throw bad_request("lemma is not valid UTF-8");
  if (unicode::contains_whitespace(lemma)) throw bad_request("lemma must not contain whitespace");
  d.lemma = unicode::nfc(lemma);

  const std::string lang = string_field(j, "language", true);
  d.language = require(parse_language(lang), "unknown language '" + lang + "'");
  const std::string pos = string_field(j, "pos", true);
  d.pos = require(parse_pos(pos), "unknown pos '" + pos + "'");

  if (const auto it = j.find("sense_index"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<long long>() < 1 || it->get<long long>() > 1'000'000) {
      throw bad_request("sense_index must be a positive integer");
    }
    d.sense_index = it->get<int>();
  }
  d.gloss = string_field(j, "gloss", false);

  const std::string primary = string_field(j, "primary", true);
  d.primary = require(SenseCode::parse(d.pos, primary), "invalid " + pos + " sense code '" + primary + "'");
  const std::string secondary = string_field(j, "secondary", false);
  if (!secondary.empty()) {
    d.secondary = require(SenseCode::parse(d.pos, secondary), "invalid " + pos + " sense code '" + secondary + "'");
  }

  d.example = string_field(j, "example", false);
  if (d.example.empty()) throw bad_request("an example sentence supporting the proposal is required");
  if (d.example.find_first_of("\t\r\n") != std::string::npos || d.gloss.find_first_of("\t\r\n") != std::string::npos) {
    throw bad_request("gloss and example must be single-line text without tabs");
  }

  const std::string source = string_field(j, "source", false);
  if (!source.empty()) d.source = require(parse_source(source), "unknown source '" + source + "'");
  if (const auto it = j.find("evidence"); it != j.end()) d.evidence = *it;

  LexiconEntry probe;
  probe.lemma = d.lemma;
  probe.language = d.language;
  probe.pos = d.pos;
  probe.sense_index = d.sense_index;
  probe.primary_sense = d.primary;
  probe.secondary_sense = d.secondary;
  try {
    validate_entry(probe);
  } catch (const InvariantError& e) {
    throw bad_request(e.what());
  }
  return d;
}

json evidence_json(const PropagationResult& r) {
  json members = json::array();
  for (const auto& m : r.cluster.members) {
    members.push_back({{"word", m.word}, {"cosine", m.cosine}, {"sense", m.sense.code()}});
  }
  json votes = json::object();
  for (const auto& v : r.votes) votes[std::string(v.sense.code())] = {{"count", v.count}, {"cosine_sum", v.cosine_sum}};
  return {{"threshold", r.cluster.threshold}, {"members", members}, {"votes", votes}, {"tie_broken", r.tie_broken}};
}

ProposalDraft draft_from_propagation(const PropagationResult& r, const Lexicon& lexicon, Language language) {
  ProposalDraft d;
  d.lemma = r.target;
  d.language = language;
  d.pos = r.pos;
  d.sense_index = 1;
  d.primary = r.proposed_sense;
  d.source = ProposalSource::Propagation;
  d.evidence = evidence_json(r);

  char tau[32];
  std::snprintf(tau, sizeof tau, "%.2f", r.cluster.threshold);
  std::string example = std::string("similarity cluster (cosine >= ") + tau + "):";
  for (std::size_t i = 0; i < r.cluster.members.size(); ++i) {
    const auto& m = r.cluster.members[i];
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", m.cosine);
    example += (i ? "; " : " ") + m.word + " " + buf + " " + std::string(m.sense.code());
  }
  d.example = example;

  if (r.pos == Pos::Verb) {
    std::map<SenseCode, std::pair<std::size_t, double>> secondary_votes;
    for (const auto& m : r.cluster.members) {
      const auto* entry = lexicon.find(m.word, Pos::Verb, 1);
      if (entry == nullptr || !entry->secondary_sense || *entry->secondary_sense == r.proposed_sense) continue;
      auto& slot = secondary_votes[*entry->secondary_sense];
      ++slot.first;
      slot.second += m.cosine;
    }
    std::optional<std::pair<SenseCode, std::pair<std::size_t, double>>> best;
    auto better = [](const auto& a, const auto& b) {
      if (a.second.first != b.second.first) return a.second.first > b.second.first;
      if (a.second.second != b.second.second) return a.second.second > b.second.second;
      return a.first.code() < b.first.code();
    };
    for (const auto& item : secondary_votes) {
      if (!best || better(item, *best)) best = item;
    }
    if (!best) {
      for (const auto& v : r.votes) {
        if (v.sense == r.proposed_sense) continue;
        const std::pair<SenseCode, std::pair<std::size_t, double>> item{v.sense, {v.count, v.cosine_sum}};
        if (!best || better(item, *best)) best = item;
      }
    }
    if (best) d.secondary = best->first;
  }
  return d;
}

json draft_to_json(const ProposalDraft& d) {
  json j = {
      {"lemma", d.lemma},
      {"language", to_string(d.language)},
      {"pos", to_string(d.pos)},
      {"sense_index", d.sense_index},
      {"gloss", d.gloss},
      {"primary", d.primary.code()},
      {"example", d.example},
      {"source", to_string(d.source)},
      {"evidence", d.evidence},
  };
  if (d.secondary) j["secondary"] = d.secondary->code();
  return j;
}

}  // namespace osn::service
