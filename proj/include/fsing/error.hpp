#ifndef FSING_ERROR_HPP
#define FSING_ERROR_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsing {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `offset` is a byte offset into the parsed string.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), message_(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }
  /// The message without the offset suffix.
  const std::string& message() const { return message_; }

private:
  std::string message_;
  std::size_t offset_;
};

class RingMismatch : public Error {
public:
  RingMismatch() : Error("operands live in different rings") {}
};

/// Exponent or degree left the machine range.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// A configured resource cap (basis size, degree, box) was exceeded.
class ResourceBound : public Error {
public:
  using Error::Error;
};

/// A precondition on the mathematical input failed.
class DomainError : public Error {
public:
  using Error::Error;
};

/// The semigroup is not pure inside the verification box.
class PurityRejected : public Error {
public:
  PurityRejected(const std::string& what, std::vector<std::int64_t> witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::vector<std::int64_t>& witness() const { return witness_; }

private:
  std::vector<std::int64_t> witness_;
};

}  // namespace fsing

#endif
