#pragma once

#include <stdexcept>
#include <string>

namespace negaffirm {

// Base for all typed errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input line (bad UTF-8, bad JSON, bad TSV); carries 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A record is syntactically valid but missing or mistyping a required field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Duplicate lexicon surface after normalization.
class DuplicateEntryError : public Error {
 public:
  explicit DuplicateEntryError(const std::string& surface)
      : Error("duplicate cue surface: \"" + surface + "\""), surface_(surface) {}
  const std::string& surface() const { return surface_; }

 private:
  std::string surface_;
};

// Two inputs that must line up do not (sentence lookup, prediction id sets).
class AlignmentError : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

// A metric was asked for on an empty record set.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class MalformedGroupError : public Error {
 public:
  using Error::Error;
};

// Correlation of a constant vector.
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

// Generation service reachable but returned a failure status.
class ServiceError : public Error {
 public:
  ServiceError(int status, const std::string& body)
      : Error("service returned status " + std::to_string(status) + ": " + body),
        status_(status),
        body_(body) {}
  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

class EndpointUnreachableError : public Error {
 public:
  using Error::Error;
};

class EmptyGenerationError : public Error {
 public:
  using Error::Error;
};

// An augmentation strategy references a part with no text and no resolution rule.
class MissingPartError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace negaffirm
