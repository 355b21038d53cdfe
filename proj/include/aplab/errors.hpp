#pragma once

#include <stdexcept>
#include <string>

namespace aplab {

// Letter index outside the alphabet, or malformed word text.
class InvalidLetter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AlphabetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A supplied inverse does not compose to the identity.
class CompositeNotIdentity : public std::invalid_argument {
 public:
  CompositeNotIdentity(int letter, const std::string& what)
      : std::invalid_argument(what), letter_(letter) {}
  /// 1-based basis letter on which the composite first fails.
  int letter() const noexcept { return letter_; }

 private:
  int letter_;
};

class NotInvertible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

class DisconnectedGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a computation contradicts a proved statement. Never expected.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class VerificationFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aplab
