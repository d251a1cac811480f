#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace osn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line() is 1-based; 0 means the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(format(source, line, what)), source_(std::move(source)), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line, const std::string& what) {
    std::string out = source.empty() ? std::string("<input>") : source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }

  std::string source_;
  std::size_t line_;
};

// A lexicon, entry, or record violates a domain invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// A statistic was requested over zero items.
class EmptyPopulationError : public Error {
 public:
  using Error::Error;
};

// Lookup of a word or id that does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace osn
