#pragma once

#include <stdexcept>
#include <string>

namespace nri {

enum class ErrorCode {
  invalid_frequency,
  degenerate_drive,
  resonance,
  inconsistent_detuning,
  singular_response,
  configuration,
  kk_truncation,
  local_field_singularity,
  degenerate_medium,
  invalid_resolution,
  ill_conditioned,
  zero_field,
  reference_zero,
  singular_correction,
  singular_permeability,
  not_found,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double value = 0.0)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code),
        value_(value) {}

  ErrorCode code() const { return code_; }
  // numeric payload: residual, condition estimate, offending detuning, ...
  double value() const { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

}  // namespace nri
