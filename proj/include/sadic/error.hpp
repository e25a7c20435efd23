#pragma once

#include <stdexcept>
#include <string>

namespace sadic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hypothesis of an operation does not hold for the given input.
/// The message names the failed hypothesis so callers can tell
/// "not applicable" apart from bugs.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (words, morphism files, codes, markers).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Files or directories that cannot be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A postcondition guaranteed by the construction failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sadic
