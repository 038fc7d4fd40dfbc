#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nilgeo {

enum class ErrorKind {
  UnknownGenerator,
  MalformedExponent,
  InvalidArgument,
  ScaleLimitExceeded,
  NotLeftNormed,
  DegreeBoundMismatch,
  NonIntegralSolve,
  NonDivisibleArea,
  ZeroProjectionConstant,
  ClassMismatch,
  NotClosed,
  Overflow,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::MalformedExponent: return "MalformedExponent";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ScaleLimitExceeded: return "ScaleLimitExceeded";
    case ErrorKind::NotLeftNormed: return "NotLeftNormed";
    case ErrorKind::DegreeBoundMismatch: return "DegreeBoundMismatch";
    case ErrorKind::NonIntegralSolve: return "NonIntegralSolve";
    case ErrorKind::NonDivisibleArea: return "NonDivisibleArea";
    case ErrorKind::ZeroProjectionConstant: return "ZeroProjectionConstant";
    case ErrorKind::ClassMismatch: return "ClassMismatch";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

inline long long checked_add(long long a, long long b) {
  long long out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "integer addition");
  return out;
}

inline long long checked_mul(long long a, long long b) {
  long long out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "integer multiplication");
  return out;
}

}  // namespace detail
}  // namespace nilgeo
