// error.cpp — Error code names and classification

#include "floquet_zeno/error.hpp"

namespace floquet_zeno {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositive: return "NonPositive";
        case ErrorCode::Negative: return "Negative";
        case ErrorCode::ZeroCavities: return "ZeroCavities";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::OrderTooLarge: return "OrderTooLarge";
        case ErrorCode::ArgumentOutOfRange: return "ArgumentOutOfRange";
        case ErrorCode::BandEdgeSingularity: return "BandEdgeSingularity";
        case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorCode::EigenFailure: return "EigenFailure";
        case ErrorCode::SingularResolvent: return "SingularResolvent";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
        case ErrorCode::NormDrift: return "NormDrift";
    }
    return "Unknown";
}

bool is_config_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositive:
        case ErrorCode::Negative:
        case ErrorCode::ZeroCavities:
        case ErrorCode::NonFinite:
        case ErrorCode::InvalidArgument:
        case ErrorCode::ConfigError:
            return true;
        default:
            return false;
    }
}

}  // namespace floquet_zeno
