#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace catastroagri {

/// Machine-readable failure codes shared by the library, the CLI and the
/// HTTP API. The string forms are part of the wire contract.
enum class ErrorCode {
    UnsupportedFormat,
    EmptyInput,
    EncodingError,
    BadDimension,
    DuplicateDimension,
    BadMetric,
    BadRequest,
    InvalidRate,
    InvalidNotice,
    InvalidTransition,
    DomainError,
    DegenerateInput,
    SeriesTooShort,
    DegenerateSeries,
    NonConvergence,
    NonInvertibleParams,
    LagTooLarge,
    HorizonInvalid,
    TooFewPoints,
    UnknownDataset,
    NotFound,
    PayloadTooLarge,
    Overflow,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for codes that describe a model/computation failure rather than bad
/// input. The CLI maps these to exit status 2.
bool is_computation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace catastroagri
