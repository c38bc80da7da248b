#pragma once

#include <stdexcept>
#include <string>

namespace eznav {

// Non-finite input, coincident points and other undefined geometry.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A function was called outside its stated parameter regime (e.g. the
// fast-pursuer formula with mu > 1).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid user-supplied argument (counts, ranges, malformed options).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The planning problem has no feasible solution (e.g. goal inside a
// capturability disk).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed scenario file; the message carries a line/column or a JSON
// pointer to the offending value.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eznav
