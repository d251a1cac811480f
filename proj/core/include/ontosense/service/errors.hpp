#pragma once

#include <string>

#include "ontosense/error.hpp"

namespace osn::service {

// An error that maps to an HTTP status and a short machine-readable code.
class ServiceError : public Error {
 public:
  ServiceError(int status, std::string code, const std::string& message)
      : Error(message), status_(status), code_(std::move(code)) {}

  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }

 private:
  int status_;
  std::string code_;
};

inline ServiceError bad_request(const std::string& message) { return {400, "bad_request", message}; }
inline ServiceError unauthorized(const std::string& message) { return {401, "unauthorized", message}; }
inline ServiceError forbidden(const std::string& message) { return {403, "forbidden", message}; }
inline ServiceError not_found(const std::string& message) { return {404, "not_found", message}; }
inline ServiceError conflict(const std::string& message) { return {409, "conflict", message}; }
inline ServiceError unprocessable(const std::string& message) { return {422, "empty_population", message}; }

}  // namespace osn::service
