#pragma once

#include <stdexcept>
#include <string>

namespace orthorank {

/// Input that cannot be decoded; `position` is a byte offset into the text
/// (or an element index for structured input), -1 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long position)
      : std::runtime_error(what + (position >= 0 ? " (at position " + std::to_string(position) + ")" : "")),
        position_(position) {}
  [[nodiscard]] long position() const { return position_; }

 private:
  long position_;
};

/// A call whose documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction produced an object that fails its own verifier.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded randomized search ran out of attempts.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orthorank
