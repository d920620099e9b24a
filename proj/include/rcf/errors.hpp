#pragma once

#include <stdexcept>
#include <string>

namespace rcf {

/// Every failure mode of the library, one code per named error condition.
enum class Errc {
  SingularMatrix,
  DimensionMismatch,
  SyntaxError,
  IndexOutOfRange,
  DivisionNearZero,
  DegenerateAlpha,
  ZeroSection,
  SingularBaseMetric,
  PoleAtAlphaEqualsBeta,
  TooCloseToSingularLocus,
  UnstableStencil,
  SigmaUndefined,
  UpdateSingular,
  NotNonHermitian,
  Step1Singular,
  Step2Singular,
  Step3Singular,
  NoValidPoints,
  InvalidMetricFile,
  InvalidConfig,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }
  const char* name() const { return errc_name(code_); }

 private:
  Errc code_;
};

/// Parse failure with source position and what the parser was looking for.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& expected)
      : Error(Errc::SyntaxError, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": expected " +
                                     expected),
        line_(line),
        column_(column),
        expected_(expected) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

inline Error step_singular(int step, const std::string& message) {
  switch (step) {
    case 1:
      return Error(Errc::Step1Singular, message);
    case 2:
      return Error(Errc::Step2Singular, message);
    default:
      return Error(Errc::Step3Singular, message);
  }
}

}  // namespace rcf
