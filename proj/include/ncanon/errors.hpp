#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncanon {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ComponentTypeMismatch : public Error {
 public:
  using Error::Error;
};

class NotComposable : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// Raised when an exhaustive search would exceed its configured bound. The
/// computed size (candidate families or visited search nodes) is carried along.
class SearchSpaceTooLarge : public Error {
 public:
  SearchSpaceTooLarge(std::string what, double size)
      : Error(what + " (size " + format_size(size) + ")"), size_(size) {}
  double size() const noexcept { return size_; }

 private:
  static std::string format_size(double s) {
    if (s < 1e15) return std::to_string(static_cast<unsigned long long>(s));
    return std::to_string(s);
  }
  double size_;
};

class MissingBraiding : public Error {
 public:
  using Error::Error;
};

class TruncationExceeded : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  HypothesisViolated(std::string which, const std::string& detail)
      : Error("hypothesis violated: " + which + (detail.empty() ? "" : ": " + detail)),
        which_(std::move(which)) {}
  const std::string& which() const noexcept { return which_; }

 private:
  std::string which_;
};

class NotAnFIsomorphism : public Error {
 public:
  using Error::Error;
};

/// A constructed proof composite failed its own verification. Indicates a defect.
class InternalProofMismatch : public Error {
 public:
  using Error::Error;
};

class MissingCoproduct : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnresolvedReference : public Error {
 public:
  using Error::Error;
};

class UnknownCommand : public Error {
 public:
  using Error::Error;
};

}  // namespace ncanon
