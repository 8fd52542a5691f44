// error.hpp — Error type shared by all floquet_zeno modules

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace floquet_zeno {

enum class ErrorCode {
    // configuration / input validation
    NonPositive,
    Negative,
    ZeroCavities,
    NonFinite,
    InvalidArgument,
    ConfigError,
    // numerical
    OrderTooLarge,
    ArgumentOutOfRange,
    BandEdgeSingularity,
    TruncationTooSmall,
    EigenFailure,
    SingularResolvent,
    QuadratureFailure,
    StepLimitExceeded,
    NormDrift,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for errors caused by bad user input rather than numerical breakdown.
bool is_config_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace floquet_zeno
