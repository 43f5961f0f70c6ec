#pragma once

#include <stdexcept>
#include <string>

namespace mimdet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on sizes, orders or parameters was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operand dimensions or layouts do not agree.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A linear system that should have a unique solution is singular.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// The detector statistic is undefined for the given input (0/0).
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

enum class DecodeErrorKind {
  kMalformedHeader,
  kTruncated,
  kUnsupportedBitDepth,
  kUnsupportedFormat,
  kCorruptData,
};

class DecodeError : public Error {
 public:
  DecodeError(DecodeErrorKind kind, const std::string& what)
      : Error(what), kind_(kind) {}

  DecodeErrorKind kind() const noexcept { return kind_; }

 private:
  DecodeErrorKind kind_;
};

}  // namespace mimdet
