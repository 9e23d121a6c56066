#pragma once

#include <stdexcept>
#include <string>

namespace qcspectra {

enum class ErrorCode {
  invalid_size,
  size_mismatch,
  wrap_ambiguity,
  inexact_division,
  factorization_degeneracy,
  mixed_sign,
  precondition,
  domain,
  unsupported_range,
  asymmetric_input,
  solver_failure,
  instability,
  projection_violation,
  degenerate_data,
  config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by laurent_div_exact when the remainder is not negligible.
class InexactDivisionError : public Error {
 public:
  InexactDivisionError(double remainder_norm, const std::string& what)
      : Error(ErrorCode::inexact_division, what),
        remainder_norm_(remainder_norm) {}

  double remainder_norm() const noexcept { return remainder_norm_; }

 private:
  double remainder_norm_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_size: return "invalid-size";
    case ErrorCode::size_mismatch: return "size-mismatch";
    case ErrorCode::wrap_ambiguity: return "wrap-ambiguity";
    case ErrorCode::inexact_division: return "inexact-division";
    case ErrorCode::factorization_degeneracy: return "factorization-degeneracy";
    case ErrorCode::mixed_sign: return "mixed-sign";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::domain: return "domain";
    case ErrorCode::unsupported_range: return "unsupported-range";
    case ErrorCode::asymmetric_input: return "asymmetric-input";
    case ErrorCode::solver_failure: return "solver-failure";
    case ErrorCode::instability: return "instability";
    case ErrorCode::projection_violation: return "projection-violation";
    case ErrorCode::degenerate_data: return "degenerate-data";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

}  // namespace qcspectra
