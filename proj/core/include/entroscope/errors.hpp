#pragma once

#include <stdexcept>
#include <string>

namespace entroscope {

// Base of every error the library raises. Callers that only need to report
// a failure can catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's mathematical domain (zero polynomial,
// non-monic companion, non-invariant subgroup, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Root refinement failed to certify within the iteration cap.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A flow document failed schema or semantic validation. `where` is a JSON
// pointer into the offending document.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Enumeration or iteration cap exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Radical computations over a cyclic base that is not 0 or squarefree.
class UnsupportedBase : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Always indicates an engine bug.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace entroscope
