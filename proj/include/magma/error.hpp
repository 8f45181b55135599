#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace magma {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed term, set expression, rational or document.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit SyntaxError(const std::string& what) : Error(what) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_ = 0;
};

/// An enumeration level or support size exceeded its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A mean sequence was asked for an index beyond its materialized prefix.
class PrefixExhausted : public Error {
 public:
  PrefixExhausted(const std::string& what, std::size_t required)
      : Error(what), required_(required) {}

  /// Smallest prefix bound that would have satisfied the request, or 0 when
  /// no finite bound can be predicted.
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

/// A weighting that is not a mean: negative weight or total mass != 1.
class InvalidMean : public Error {
 public:
  using Error::Error;
};

/// An emitted witness or certificate failed its independent re-check.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace magma
