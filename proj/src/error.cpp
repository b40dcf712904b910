#include "catastroagri/error.hpp"

namespace catastroagri {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::EncodingError: return "EncodingError";
        case ErrorCode::BadDimension: return "BadDimension";
        case ErrorCode::DuplicateDimension: return "DuplicateDimension";
        case ErrorCode::BadMetric: return "BadMetric";
        case ErrorCode::BadRequest: return "BadRequest";
        case ErrorCode::InvalidRate: return "InvalidRate";
        case ErrorCode::InvalidNotice: return "InvalidNotice";
        case ErrorCode::InvalidTransition: return "InvalidTransition";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::DegenerateSeries: return "DegenerateSeries";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::NonInvertibleParams: return "NonInvertibleParams";
        case ErrorCode::LagTooLarge: return "LagTooLarge";
        case ErrorCode::HorizonInvalid: return "HorizonInvalid";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::UnknownDataset: return "UnknownDataset";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
        case ErrorCode::Overflow: return "Overflow";
    }
    return "Unknown";
}

bool is_computation_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DegenerateInput:
        case ErrorCode::SeriesTooShort:
        case ErrorCode::DegenerateSeries:
        case ErrorCode::NonConvergence:
        case ErrorCode::NonInvertibleParams:
        case ErrorCode::LagTooLarge:
        case ErrorCode::TooFewPoints:
        case ErrorCode::Overflow:
            return true;
        default:
            return false;
    }
}

}  // namespace catastroagri
