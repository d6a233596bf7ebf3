#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sobrep {

enum class ErrorCode {
  invalid_argument,
  index_out_of_range,
  invalid_algebra,
  algebra_mismatch,
  model_mismatch,
  malformed_coordinates,
  divergence,
  band_limit_exceeded,
  truncation_budget_exceeded,
  defective_matrix,
  branch_cut,
  unsupported,
  below_growth_threshold,
  overflow,
  config,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. The code is stable and is what the CLI reports in
/// its machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sobrep
