#pragma once

#include <stdexcept>
#include <string>

namespace pmiso {

enum class ErrorKind {
  kParse,
  kSizeGuard,
  kDomain,
  kPrecondition,
  kVerification,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

enum class ParseErrorCode {
  kMalformed,
  kCountMismatch,
  kSelfLoop,
  kDuplicateEdge,
  kVertexOutOfRange,
  kTooManyVertices,
};

class ParseError : public Error {
 public:
  ParseError(ParseErrorCode code, int line, const std::string& what)
      : Error(ErrorKind::kParse, what), code_(code), line_(line) {}
  ParseErrorCode code() const { return code_; }
  int line() const { return line_; }

 private:
  ParseErrorCode code_;
  int line_;
};

// Thrown when a brute-force oracle or exhaustive enumeration is asked to run
// above its configured vertex limit.
class SizeGuardError : public Error {
 public:
  explicit SizeGuardError(const std::string& what)
      : Error(ErrorKind::kSizeGuard, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::kDomain, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::kPrecondition, what) {}
};

// A computed object failed its post-condition check. Never expected; indicates
// a bug or an arithmetic budget that was too small.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what)
      : Error(ErrorKind::kVerification, what) {}
};

}  // namespace pmiso
