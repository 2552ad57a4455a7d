#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

namespace cmprank {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or value domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A referenced entity (document, topic, cache entry) does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content. Carries source name and 1-based line number
/// (line 0 means the whole file, e.g. invalid JSON).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : Error(format_message(source, line, message)), source_(source), line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format_message(const std::string& source, std::size_t line,
                                    const std::string& message) {
    if (line == 0) return source + ": " + message;
    return source + ":" + std::to_string(line) + ": " + message;
  }

  std::string source_;
  std::size_t line_;
};

/// HTTP-level failure. status() is 0 when no response was received.
class TransportError : public Error {
 public:
  TransportError(int status, const std::string& message)
      : Error(message), status_(status) {}

  int status() const { return status_; }

 private:
  int status_;
};

}  // namespace cmprank
