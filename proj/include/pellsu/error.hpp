#pragma once

#include <stdexcept>
#include <string>

namespace pellsu {

// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed a value outside an operation's domain (square d, n = 0, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Mathematical domain violation, e.g. log of a non-positive number.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A certified decision could not be reached before the precision cap.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& what, long bits_tried)
      : Error(what + " (precision exhausted at " + std::to_string(bits_tried) + " bits)"),
        bits_tried_(bits_tried) {}
  long bits_tried() const noexcept { return bits_tried_; }

 private:
  long bits_tried_;
};

// A lemma precondition does not hold for the supplied arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A combinatorial or time budget was exhausted.
class ResourceExceeded : public Error {
 public:
  ResourceExceeded(const std::string& what, unsigned long long progress)
      : Error(what), progress_(progress) {}
  unsigned long long progress() const noexcept { return progress_; }

 private:
  unsigned long long progress_;
};

// An internal cross-check failed; always indicates a bug or a bad constant.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace pellsu
