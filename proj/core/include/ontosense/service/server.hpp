#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ontosense/senses.hpp"
#include "ontosense/service/store.hpp"

namespace osn::service {

enum class Role { Contributor, Reviewer };

struct User {
  std::string name;
  Role role = Role::Contributor;
};

// Static bearer tokens. File format, one per line: token<TAB>user<TAB>role,
// role being "contributor" or "reviewer"; '#' lines are comments.
class TokenTable {
 public:
  TokenTable() = default;
  void add(std::string token, User user);
  std::optional<User> find(std::string_view token) const;

  static TokenTable load(const std::filesystem::path& path);

 private:
  std::map<std::string, User, std::less<>> tokens_;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path token_file;
  std::filesystem::path data_dir = "ontosense-data";
  std::map<Language, std::filesystem::path> lexicons;  // seed files, used when the store has no entries
  std::size_t snapshot_every = 100;

  // JSON config: {"listen": "host:port", "token_file": ..., "data_dir": ...,
  // "lexicons": {"hi": path, ...}, "snapshot_every": n}. Relative paths are
  // resolved against the config file's directory.
  static ServiceConfig load(const std::filesystem::path& path);

  // ONTOSENSE_LISTEN, ONTOSENSE_TOKEN_FILE, ONTOSENSE_DATA_DIR override the file.
  void apply_environment();
};

/// HTTP/JSON front end over a Store.
class HttpService {
 public:
  HttpService(std::shared_ptr<Store> store, TokenTable tokens);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds (port 0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  // Serves until stop(); blocks.
  void listen();
  void stop();

  Store& store() { return *store_; }

 private:
  struct Impl;
  std::shared_ptr<Store> store_;
  std::unique_ptr<Impl> impl_;
};

// Builds the store (seeding configured lexicons) and serves until stopped.
int run_service(const ServiceConfig& config);

}  // namespace osn::service
