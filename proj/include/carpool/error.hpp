#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace carpool {

enum class ErrorCode {
  InvalidSize,
  VertexOutOfRange,
  SelfLoop,
  UnknownEdge,
  DeadEdge,
  NoLiveEdge,
  WrongPartition,
  StateCorruption,
  InvariantViolation,
  SizeLimit,
  Malformed,
  MissingHeader,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Error raised while reading a stream file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& what)
      : Error(code, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace carpool
