#include "ontosense/service/store.hpp"

#include <chrono>
#include <ctime>
#include <map>

#include "ontosense/error.hpp"
#include "ontosense/service/errors.hpp"

namespace osn::service {

using nlohmann::json;

namespace {

constexpr char kCrockford[] = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";

void apply_entries(StoreState& state, Language language, std::vector<LexiconEntry> added) {
  const auto current = state.lexicon(language);
  std::vector<LexiconEntry> entries(current->entries().begin(), current->entries().end());
  std::map<EntryKey, std::size_t> position;
  for (std::size_t i = 0; i < entries.size(); ++i) position.emplace(entries[i].key(), i);
  for (auto& e : added) {
    const auto it = position.find(e.key());
    if (it != position.end()) {
      entries[it->second] = std::move(e);
    } else {
      position.emplace(e.key(), entries.size());
      entries.push_back(std::move(e));
    }
  }
  state.lexicons[language] = std::make_shared<const Lexicon>(language, std::move(entries));
}

void apply_one(StoreState& state, const json& event) {
  const std::string type = event.at("type").get<std::string>();
  if (type == "entry-added") {
    LexiconEntry e = entry_from_json(event.at("entry"));
    const Language lang = e.language;
    apply_entries(state, lang, {std::move(e)});
  } else if (type == "proposal-submitted") {
    Proposal p = proposal_from_json(event.at("proposal"));
    if (state.proposals.contains(p.id)) throw Error("duplicate proposal id " + p.id);
    state.proposals.emplace(p.id, std::move(p));
  } else if (type == "proposal-reviewed") {
    auto it = state.proposals.find(event.at("id").get<std::string>());
    if (it == state.proposals.end()) throw Error("review of unknown proposal");
    if (it->second.status != ProposalStatus::Pending) throw Error("proposal reviewed twice");
    const auto decision = parse_decision(event.at("decision").get<std::string>());
    if (!decision) throw Error("bad review decision");
    it->second.reviewer = event.at("reviewer").get<std::string>();
    if (*decision == Decision::Accept) {
      it->second.status = ProposalStatus::Accepted;
      LexiconEntry e = entry_from_json(event.at("entry"));
      const Language lang = e.language;
      apply_entries(state, lang, {std::move(e)});
    } else {
      it->second.status = ProposalStatus::Rejected;
    }
  } else if (type == "comment-added") {
    auto it = state.proposals.find(event.at("id").get<std::string>());
    if (it == state.proposals.end()) throw Error("comment on unknown proposal");
    it->second.comments.push_back({event.at("user").get<std::string>(), event.at("ts").get<std::string>(),
                                   event.at("text").get<std::string>()});
  } else {
    throw Error("unknown event type '" + type + "'");
  }
}

}  // namespace

std::shared_ptr<const Lexicon> StoreState::lexicon(Language language) const {
  static const auto empty_hi = std::make_shared<const Lexicon>(Language::Hindi);
  static const auto empty_te = std::make_shared<const Lexicon>(Language::Telugu);
  static const auto empty_en = std::make_shared<const Lexicon>(Language::English);
  const auto it = lexicons.find(language);
  if (it != lexicons.end()) return it->second;
  switch (language) {
    case Language::Hindi: return empty_hi;
    case Language::Telugu: return empty_te;
    case Language::English: return empty_en;
  }
  return empty_hi;
}

json StoreState::to_json() const {
  json lex = json::object();
  for (const auto& [language, lexicon] : lexicons) {
    json rows = json::array();
    for (const auto& e : lexicon->entries()) rows.push_back(service::to_json(e));
    lex[std::string(osn::to_string(language))] = rows;
  }
  json props = json::array();
  for (const auto& [id, p] : proposals) props.push_back(service::to_json(p));
  return {{"seq", seq}, {"lexicons", lex}, {"proposals", props}};
}

StoreState StoreState::from_json(const json& j) {
  StoreState s;
  s.seq = j.at("seq").get<std::uint64_t>();
  for (const auto& [code, rows] : j.at("lexicons").items()) {
    const auto language = parse_language(code);
    if (!language) throw Error("snapshot has unknown language " + code);
    std::vector<LexiconEntry> entries;
    for (const auto& row : rows) entries.push_back(entry_from_json(row));
    s.lexicons[*language] = std::make_shared<const Lexicon>(*language, std::move(entries));
  }
  for (const auto& row : j.at("proposals")) {
    Proposal p = proposal_from_json(row);
    s.proposals.emplace(p.id, std::move(p));
  }
  return s;
}

void apply_event(StoreState& state, const json& event) {
  const auto seq = event.at("seq").get<std::uint64_t>();
  if (seq != state.seq + 1) {
    throw Error("event sequence gap: expected " + std::to_string(state.seq + 1) + ", got " + std::to_string(seq));
  }
  apply_one(state, event);
  state.seq = seq;
}

namespace {

// Replays `events` in order, folding runs of entry-added events for one
// language into a single lexicon rebuild.
void apply_batch(StoreState& state, const std::vector<json>& events) {
  std::size_t i = 0;
  while (i < events.size()) {
    if (events[i].at("type") != "entry-added") {
      apply_event(state, events[i]);
      ++i;
      continue;
    }
    std::vector<LexiconEntry> run;
    const Language lang = entry_from_json(events[i].at("entry")).language;
    std::uint64_t seq = state.seq;
    while (i < events.size() && events[i].at("type") == "entry-added") {
      LexiconEntry e = entry_from_json(events[i].at("entry"));
      if (e.language != lang) break;
      const auto event_seq = events[i].at("seq").get<std::uint64_t>();
      if (event_seq != seq + 1) throw Error("event sequence gap at " + std::to_string(event_seq));
      seq = event_seq;
      run.push_back(std::move(e));
      ++i;
    }
    apply_entries(state, lang, std::move(run));
    state.seq = seq;
  }
}

std::vector<json> read_events(const std::filesystem::path& path, std::uint64_t after) {
  std::vector<json> events;
  std::ifstream in(path, std::ios::binary);
  if (!in) return events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json event;
    try {
      event = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path.string(), line_no, std::string("corrupt event: ") + e.what());
    }
    if (event.at("seq").get<std::uint64_t>() > after) events.push_back(std::move(event));
  }
  return events;
}

}  // namespace

StoreState replay_log(const std::filesystem::path& log_path) {
  StoreState state;
  apply_batch(state, read_events(log_path, 0));
  return state;
}

std::optional<Decision> parse_decision(std::string_view text) {
  if (text == "accept") return Decision::Accept;
  if (text == "reject") return Decision::Reject;
  return std::nullopt;
}

UlidGenerator::UlidGenerator(std::uint64_t seed) : rng_(seed) {}

std::string UlidGenerator::next(std::int64_t unix_ms) {
  if (unix_ms <= last_ms_) {
    // Same (or earlier) millisecond: keep the time part and count up.
    if (++lo_ == 0) ++hi_;
  } else {
    last_ms_ = unix_ms;
    hi_ = static_cast<std::uint16_t>(rng_() & 0x7FFF);  // headroom for increments
    lo_ = rng_();
  }
  std::string out(26, '0');
  auto time = static_cast<std::uint64_t>(last_ms_);
  for (int i = 9; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kCrockford[time & 31];
    time >>= 5;
  }
  // 80 random bits = hi_(16) : lo_(64), written as 16 base32 digits.
  unsigned __int128 bits = (static_cast<unsigned __int128>(hi_) << 64) | lo_;
  for (int i = 25; i >= 10; --i) {
    out[static_cast<std::size_t>(i)] = kCrockford[static_cast<unsigned>(bits & 31)];
    bits >>= 5;
  }
  return out;
}

std::string iso8601_utc(std::int64_t unix_ms) {
  const std::time_t secs = static_cast<std::time_t>(unix_ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(unix_ms % 1000));
  return buf;
}

Store::Store(Options options)
    : options_(std::move(options)), ids_(options_.id_seed != 0 ? options_.id_seed : std::random_device{}()) {
  std::filesystem::create_directories(options_.data_dir);
  StoreState state;
  if (std::filesystem::exists(snapshot_path())) {
    std::ifstream in(snapshot_path(), std::ios::binary);
    state = StoreState::from_json(json::parse(in).at("state"));
  }
  apply_batch(state, read_events(log_path(), state.seq));
  state_ = std::make_shared<const StoreState>(std::move(state));
  log_.open(log_path(), std::ios::binary | std::ios::app);
  if (!log_) throw Error("cannot open event log " + log_path().string());
}

std::shared_ptr<const StoreState> Store::state() const {
  std::lock_guard lock(state_mutex_);
  return state_;
}

std::int64_t Store::now_ms() const {
  if (options_.clock) return options_.clock();
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string Store::timestamp(std::int64_t ms) const { return iso8601_utc(ms); }

void Store::commit(json event) {
  const auto current = state();
  auto next = std::make_shared<StoreState>(*current);
  event["seq"] = current->seq + 1;
  apply_event(*next, event);
  log_ << event.dump() << '\n';
  log_.flush();
  if (!log_) throw Error("event log write failed");
  {
    std::lock_guard lock(state_mutex_);
    state_ = next;
  }
  if (options_.snapshot_every != 0 && next->seq % options_.snapshot_every == 0) write_snapshot();
}

std::size_t Store::seed(const Lexicon& lexicon) {
  std::lock_guard writer(write_mutex_);
  const auto current = state();
  if (!current->lexicon(lexicon.language())->empty() || lexicon.empty()) return 0;
  auto next = std::make_shared<StoreState>(*current);
  std::vector<json> events;
  const std::string ts = timestamp(now_ms());
  std::uint64_t seq = current->seq;
  for (const auto& e : lexicon.entries()) {
    events.push_back({{"seq", ++seq}, {"type", "entry-added"}, {"ts", ts}, {"entry", to_json(e)}});
  }
  apply_batch(*next, events);
  for (const auto& event : events) log_ << event.dump() << '\n';
  log_.flush();
  if (!log_) throw Error("event log write failed");
  {
    std::lock_guard lock(state_mutex_);
    state_ = next;
  }
  if (options_.snapshot_every != 0) write_snapshot();
  return events.size();
}

Proposal Store::submit(const ProposalDraft& draft, const std::string& submitter) {
  if (submitter.empty()) throw unauthorized("missing user");
  std::lock_guard writer(write_mutex_);
  const auto current = state();
  const auto lexicon = current->lexicon(draft.language);
  const int existing = lexicon->sense_count(draft.lemma, draft.pos);
  if (draft.sense_index > existing + 1) {
    throw bad_request("sense_index " + std::to_string(draft.sense_index) + " would leave a gap: '" + draft.lemma +
                      "' has " + std::to_string(existing) + " " + std::string(osn::to_string(draft.pos)) +
                      " sense(s)");
  }
  const auto ms = now_ms();
  Proposal p;
  p.id = ids_.next(ms);
  p.lemma = draft.lemma;
  p.language = draft.language;
  p.pos = draft.pos;
  p.sense_index = draft.sense_index;
  p.gloss = draft.gloss;
  p.proposed_primary = draft.primary;
  p.proposed_secondary = draft.secondary;
  p.example = draft.example;
  p.submitter = submitter;
  p.source = draft.source;
  p.submitted_at = timestamp(ms);
  p.evidence = draft.evidence;
  commit({{"type", "proposal-submitted"}, {"ts", p.submitted_at}, {"proposal", to_json(p)}});
  return p;
}

Proposal Store::review(const std::string& id, Decision decision, const std::string& reviewer) {
  std::lock_guard writer(write_mutex_);
  const auto current = state();
  const auto it = current->proposals.find(id);
  if (it == current->proposals.end()) throw not_found("no proposal " + id);
  const Proposal& p = it->second;
  if (p.status != ProposalStatus::Pending) {
    throw conflict("proposal " + id + " was already " + std::string(to_string(p.status)));
  }
  if (reviewer == p.submitter) throw forbidden("reviewers cannot review their own proposals");

  json event = {{"type", "proposal-reviewed"},
                {"ts", timestamp(now_ms())},
                {"id", id},
                {"decision", decision == Decision::Accept ? "accept" : "reject"},
                {"reviewer", reviewer}};
  if (decision == Decision::Accept) {
    const auto lexicon = current->lexicon(p.language);
    LexiconEntry entry = p.to_entry();
    const auto* previous = lexicon->find(entry.lemma, entry.pos, entry.sense_index);
    if (previous == nullptr && entry.sense_index > lexicon->sense_count(entry.lemma, entry.pos) + 1) {
      throw conflict("accepting would leave a sense_index gap for '" + entry.lemma + "'");
    }
    if (previous != nullptr && entry.gloss.empty()) entry.gloss = previous->gloss;
    event["entry"] = to_json(entry);
    event["previous"] = previous != nullptr ? to_json(*previous) : json(nullptr);
  }
  commit(std::move(event));
  return state()->proposals.at(id);
}

Proposal Store::comment(const std::string& id, const std::string& user, const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw bad_request("comment text must not be empty");
  std::lock_guard writer(write_mutex_);
  const auto current = state();
  if (!current->proposals.contains(id)) throw not_found("no proposal " + id);
  commit({{"type", "comment-added"}, {"ts", timestamp(now_ms())}, {"id", id}, {"user", user}, {"text", text}});
  return state()->proposals.at(id);
}

void Store::write_snapshot() {
  const auto current = state();
  const auto tmp = options_.data_dir / "snapshot.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write snapshot");
    out << json{{"seq", current->seq}, {"state", current->to_json()}}.dump() << '\n';
  }
  std::filesystem::rename(tmp, snapshot_path());
}

}  // namespace osn::service
