#include "ontosense/service/server.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

// httplib defaults to a backlog of 5, which drops bursts of concurrent clients.
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include <httplib.h>

#include "ontosense/error.hpp"
#include "ontosense/lexicon.hpp"
#include "ontosense/service/errors.hpp"

namespace osn::service {

using nlohmann::json;

void TokenTable::add(std::string token, User user) { tokens_[std::move(token)] = std::move(user); }

std::optional<User> TokenTable::find(std::string_view token) const {
  const auto it = tokens_.find(token);
  if (it == tokens_.end()) return std::nullopt;
  return it->second;
}

TokenTable TokenTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open token file " + path.string());
  TokenTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError(path.string(), line_no, "expected token<TAB>user<TAB>role");
    const std::string role = line.substr(t2 + 1);
    if (role != "contributor" && role != "reviewer") throw ParseError(path.string(), line_no, "unknown role " + role);
    table.add(line.substr(0, t1),
              {line.substr(t1 + 1, t2 - t1 - 1), role == "reviewer" ? Role::Reviewer : Role::Contributor});
  }
  return table;
}

namespace {

void parse_listen(const std::string& listen, ServiceConfig& config) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw Error("listen address must be host:port");
  config.host = listen.substr(0, colon);
  config.port = std::stoi(listen.substr(colon + 1));
}

}  // namespace

ServiceConfig ServiceConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  const json j = json::parse(in);
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path candidate(p);
    return candidate.is_absolute() ? candidate : base / candidate;
  };
  ServiceConfig config;
  if (j.contains("listen")) parse_listen(j.at("listen").get<std::string>(), config);
  if (j.contains("token_file")) config.token_file = resolve(j.at("token_file").get<std::string>());
  if (j.contains("data_dir")) config.data_dir = resolve(j.at("data_dir").get<std::string>());
  if (j.contains("snapshot_every")) config.snapshot_every = j.at("snapshot_every").get<std::size_t>();
  if (j.contains("lexicons")) {
    for (const auto& [code, file] : j.at("lexicons").items()) {
      const auto language = parse_language(code);
      if (!language) throw Error("config: unknown language " + code);
      config.lexicons[*language] = resolve(file.get<std::string>());
    }
  }
  return config;
}

void ServiceConfig::apply_environment() {
  if (const char* v = std::getenv("ONTOSENSE_LISTEN"); v != nullptr && *v != '\0') parse_listen(v, *this);
  if (const char* v = std::getenv("ONTOSENSE_TOKEN_FILE"); v != nullptr && *v != '\0') token_file = v;
  if (const char* v = std::getenv("ONTOSENSE_DATA_DIR"); v != nullptr && *v != '\0') data_dir = v;
}

struct HttpService::Impl {
  httplib::Server server;
  TokenTable tokens;
};

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send_json(res, status, {{"error", code}, {"message", message}});
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

Handler guarded(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const ServiceError& e) {
      send_error(res, e.status(), e.code(), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "bad_request", std::string("invalid JSON: ") + e.what());
    } catch (const EmptyPopulationError& e) {
      send_error(res, 422, "empty_population", e.what());
    } catch (const InvariantError& e) {
      send_error(res, 400, "bad_request", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

Language language_param(const std::string& code) {
  const auto language = parse_language(code);
  if (!language) throw bad_request("unknown language '" + code + "'");
  return *language;
}

std::optional<Pos> pos_param(const httplib::Request& req) {
  if (!req.has_param("pos")) return std::nullopt;
  const std::string value = req.get_param_value("pos");
  const auto pos = parse_pos(value);
  if (!pos) throw bad_request("unknown pos '" + value + "'");
  return pos;
}

json body_json(const httplib::Request& req) {
  if (req.body.empty()) throw bad_request("request body required");
  return json::parse(req.body);
}

}  // namespace

HttpService::HttpService(std::shared_ptr<Store> store, TokenTable tokens)
    : store_(std::move(store)), impl_(std::make_unique<Impl>()) {
  impl_->tokens = std::move(tokens);
  auto& server = impl_->server;
  Store* store_ptr = store_.get();
  const TokenTable* table = &impl_->tokens;

  auto authenticate = [table](const httplib::Request& req) -> User {
    const std::string header = req.get_header_value("Authorization");
    constexpr std::string_view prefix = "Bearer ";
    if (header.size() <= prefix.size() || header.compare(0, prefix.size(), prefix) != 0) {
      throw unauthorized("bearer token required");
    }
    const auto user = table->find(std::string_view(header).substr(prefix.size()));
    if (!user) throw unauthorized("unknown token");
    return *user;
  };

  server.Get(R"(/entries/([^/]+)/([^/]+))", guarded([store_ptr](const httplib::Request& req, httplib::Response& res) {
    const Language language = language_param(req.matches[1]);
    const auto pos = pos_param(req);
    const auto state = store_ptr->state();
    const auto entries = state->lexicon(language)->lookup(req.matches[2].str(), pos);
    if (entries.empty()) throw not_found("no entry for '" + req.matches[2].str() + "'");
    json out = json::array();
    for (const auto& e : entries) out.push_back(to_json(e));
    send_json(res, 200, out);
  }));

  server.Get("/entries", guarded([store_ptr](const httplib::Request& req, httplib::Response& res) {
    std::optional<Language> language;
    if (req.has_param("lang")) language = language_param(req.get_param_value("lang"));
    const auto pos = pos_param(req);
    std::optional<SenseCode> sense;
    if (req.has_param("sense")) {
      const std::string code = req.get_param_value("sense");
      sense = pos ? SenseCode::parse(*pos, code) : SenseCode::parse_any(code);
      if (!sense) throw bad_request("unknown sense code '" + code + "'");
    }
    const auto state = store_ptr->state();
    json out = json::array();
    for (const Language l : {Language::Hindi, Language::Telugu, Language::English}) {
      if (language && *language != l) continue;
      for (const auto& e : state->lexicon(l)->entries()) {
        if (pos && e.pos != *pos) continue;
        if (sense && e.primary_sense != *sense && e.secondary_sense != *sense) continue;
        out.push_back(to_json(e));
      }
    }
    send_json(res, 200, out);
  }));

  server.Get("/stats", guarded([store_ptr](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("lang")) throw bad_request("lang parameter required");
    const Language language = language_param(req.get_param_value("lang"));
    const Pos pos = pos_param(req).value_or(Pos::Verb);
    Which which = Which::Primary;
    if (req.has_param("which")) {
      const auto parsed = parse_which(req.get_param_value("which"));
      if (!parsed) throw bad_request("which must be primary or secondary");
      which = *parsed;
    }
    if (which == Which::Secondary && pos != Pos::Verb) throw bad_request("secondary senses exist only for verbs");
    const auto dist = sense_distribution(*store_ptr->state()->lexicon(language), pos, which);
    json percent = json::object();
    json counts = json::object();
    for (const auto& share : dist.shares) {
      percent[std::string(share.code.code())] = share.percent;
      counts[std::string(share.code.code())] = share.count;
    }
    send_json(res, 200,
              {{"language", to_string(language)},
               {"pos", to_string(pos)},
               {"which", to_string(which)},
               {"total", dist.total},
               {"counts", counts},
               {"percent", percent}});
  }));

  server.Post("/proposals", guarded([store_ptr, authenticate](const httplib::Request& req, httplib::Response& res) {
    const User user = authenticate(req);
    const ProposalDraft draft = draft_from_json(body_json(req));
    send_json(res, 201, to_json(store_ptr->submit(draft, user.name)));
  }));

  server.Get("/proposals", guarded([store_ptr](const httplib::Request& req, httplib::Response& res) {
    std::optional<ProposalStatus> status;
    if (req.has_param("status")) {
      status = parse_status(req.get_param_value("status"));
      if (!status) throw bad_request("unknown status '" + req.get_param_value("status") + "'");
    }
    const auto state = store_ptr->state();
    json out = json::array();
    for (const auto& [id, p] : state->proposals) {
      if (!status || p.status == *status) out.push_back(to_json(p));
    }
    send_json(res, 200, out);
  }));

  server.Get(R"(/proposals/([^/]+))", guarded([store_ptr](const httplib::Request& req, httplib::Response& res) {
    const auto state = store_ptr->state();
    const auto it = state->proposals.find(req.matches[1].str());
    if (it == state->proposals.end()) throw not_found("no proposal " + req.matches[1].str());
    send_json(res, 200, to_json(it->second));
  }));

  server.Post(R"(/proposals/([^/]+)/review)",
              guarded([store_ptr, authenticate](const httplib::Request& req, httplib::Response& res) {
                const User user = authenticate(req);
                const json body = body_json(req);
                const auto decision = parse_decision(body.value("decision", std::string()));
                if (!decision) throw bad_request("decision must be 'accept' or 'reject'");
                const std::string id = req.matches[1].str();
                if (!store_ptr->state()->proposals.contains(id)) throw not_found("no proposal " + id);
                if (user.role != Role::Reviewer) throw forbidden("reviewer role required");
                send_json(res, 200, to_json(store_ptr->review(id, *decision, user.name)));
              }));

  server.Post(R"(/proposals/([^/]+)/comments)",
              guarded([store_ptr, authenticate](const httplib::Request& req, httplib::Response& res) {
                const User user = authenticate(req);
                const json body = body_json(req);
                const auto text = body.find("text");
                if (text == body.end() || !text->is_string()) throw bad_request("text field required");
                const Proposal p = store_ptr->comment(req.matches[1].str(), user.name, text->get<std::string>());
                json thread = json::array();
                for (const auto& c : p.comments) {
                  thread.push_back({{"user", c.user}, {"timestamp", c.timestamp}, {"text", c.text}});
                }
                send_json(res, 201, {{"id", p.id}, {"comments", thread}});
              }));

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      send_error(res, res.status, res.status == 404 ? "not_found" : "error", httplib::status_message(res.status));
    }
  });
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpService::listen() { impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

int run_service(const ServiceConfig& config) {
  Store::Options options;
  options.data_dir = config.data_dir;
  options.snapshot_every = config.snapshot_every;
  auto store = std::make_shared<Store>(options);
  for (const auto& [language, path] : config.lexicons) {
    const auto written = store->seed(load_lexicon(path, language));
    if (written > 0) std::cerr << "seeded " << written << " " << to_string(language) << " entries from " << path << '\n';
  }
  TokenTable tokens = config.token_file.empty() ? TokenTable{} : TokenTable::load(config.token_file);
  HttpService service(store, std::move(tokens));
  const int port = service.bind(config.host, config.port);
  std::cerr << "listening on " << config.host << ":" << port << '\n';
  service.listen();
  return 0;
}

}  // namespace osn::service
