#pragma once

#include <stdexcept>
#include <string>

namespace voigt {

enum class ErrorCode {
    kInvalidArgument = 1,
    kNonConvergence,
    kEmptySample,
    kCenteredOnly,
    kProposalBudgetExceeded,
    kOrderTooHigh,
    kOptimizerFailed,
    kDegenerateSample,
    kNonFinite,
    kNonPositiveVariance,
    kGridTooCoarse,
    kParseError,
    kEmptyFile,
    kIo,
};

/// Stable identifier used in diagnostics, e.g. "NonConvergence".
const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace voigt
