#pragma once

#include <stdexcept>
#include <string>

namespace rispace {

enum class ErrorCode {
  DomainMismatch,
  DomainOverflow,
  OutOfDomain,
  UnsupportedBackend,
  DivergentIntegral,
  HypothesisViolated,
  PremiseViolated,
  NormInfinite,
  InvalidArgument,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the text readers; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace rispace
