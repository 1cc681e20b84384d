#pragma once

#include <stdexcept>
#include <string>

namespace diagwalk {

enum class ErrorCode {
  // parse class
  Syntax,
  UnknownVariable,
  BadExponent,
  // precondition class
  ZeroInput,
  ZeroDenominator,
  OutOfRange,
  PrecisionMismatch,
  InsufficientPrecision,
  SeriesNotInvertible,   // series_inv with f(0) = 0
  ExpNonzeroConstant,    // series_exp with f(0) != 0
  LogNotUnit,            // series_log with f(0) != 1
  DuplicateNodes,
  ConstantInMainVariable,
  NotCoprime,
  PoleAtOrigin,
  BadEvaluationPoint,
  InvalidStepSet,
  NotExact,
  InconsistentNewtonSums,
  // algorithmic class
  NoTelescoper,
  CertificationFailed,
  BoundViolated,
  ReconstructionFailed,
};

enum class ErrorClass { Parse, Precondition, Algorithmic };

constexpr ErrorClass error_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax:
    case ErrorCode::UnknownVariable:
    case ErrorCode::BadExponent:
      return ErrorClass::Parse;
    case ErrorCode::NoTelescoper:
    case ErrorCode::CertificationFailed:
    case ErrorCode::BoundViolated:
    case ErrorCode::ReconstructionFailed:
      return ErrorClass::Algorithmic;
    default:
      return ErrorClass::Precondition;
  }
}

constexpr const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownVariable: return "unknown_variable";
    case ErrorCode::BadExponent: return "bad_exponent";
    case ErrorCode::ZeroInput: return "zero_input";
    case ErrorCode::ZeroDenominator: return "zero_denominator";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::PrecisionMismatch: return "precision_mismatch";
    case ErrorCode::InsufficientPrecision: return "insufficient_precision";
    case ErrorCode::SeriesNotInvertible: return "series_not_invertible";
    case ErrorCode::ExpNonzeroConstant: return "exp_nonzero_constant";
    case ErrorCode::LogNotUnit: return "log_not_unit";
    case ErrorCode::DuplicateNodes: return "duplicate_nodes";
    case ErrorCode::ConstantInMainVariable: return "constant_in_main_variable";
    case ErrorCode::NotCoprime: return "not_coprime";
    case ErrorCode::PoleAtOrigin: return "pole_at_origin";
    case ErrorCode::BadEvaluationPoint: return "bad_evaluation_point";
    case ErrorCode::InvalidStepSet: return "invalid_step_set";
    case ErrorCode::NotExact: return "not_exact";
    case ErrorCode::InconsistentNewtonSums: return "inconsistent_newton_sums";
    case ErrorCode::NoTelescoper: return "no_telescoper";
    case ErrorCode::CertificationFailed: return "certification_failed";
    case ErrorCode::BoundViolated: return "bound_violated";
    case ErrorCode::ReconstructionFailed: return "reconstruction_failed";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorClass category() const noexcept { return error_class(code_); }

 private:
  ErrorCode code_;
};

/// Syntax errors carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& what, int line, int column)
      : Error(code, what + " at line " + std::to_string(line) + ", column " +
                        std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) throw Error(code, what);
}

}  // namespace diagwalk
