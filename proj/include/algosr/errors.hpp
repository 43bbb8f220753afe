#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace algosr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A RIS record that cannot be read: bad tag line or missing `ER` terminator.
class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus is empty") {}
};

/// Catalog could not answer (network, HTTP status, malformed payload).
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class AuthMissing : public Error {
 public:
  explicit AuthMissing(const std::string& env_var)
      : Error("environment variable '" + env_var + "' holding the bearer token is not set") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Persisted run state is unreadable or violates a run invariant.
class CorruptState : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class TooFewKeywords : public Error {
 public:
  TooFewKeywords() : Error("consistency needs at least two keywords") {}
};

class EmptyKeywords : public Error {
 public:
  EmptyKeywords() : Error("keyword set is empty") {}
};

/// Operation invoked on a state that does not satisfy its precondition.
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace algosr
