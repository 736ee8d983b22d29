#pragma once

#include <stdexcept>
#include <string>

namespace regsimplex {

// Input violates an operation's precondition (bad arity, non-positive edge, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Distance data that cannot be realized (e.g. a Cayley-Menger determinant of the wrong sign).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (JSON documents, "p/q" strings).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace regsimplex
