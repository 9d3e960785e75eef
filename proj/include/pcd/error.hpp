#pragma once

#include <stdexcept>
#include <string>

namespace pcd {

enum class ErrorCode {
    EmptyReference,
    DegenerateReference,
    OutOfInterval,
    CoincidentPoint,
    EmptyCell,
    WrongSpecialization,
    OracleTooLarge,
    BadSupport,
    BadParameter,
    NotInvertible,
    BadSampleSize,
    QuadratureFailed,
    UnsupportedSupport,
    EnumerationTooLarge,
    BadConfig,
    OrderDetectionFailed,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyReference: return "EmptyReference";
        case ErrorCode::DegenerateReference: return "DegenerateReference";
        case ErrorCode::OutOfInterval: return "OutOfInterval";
        case ErrorCode::CoincidentPoint: return "CoincidentPoint";
        case ErrorCode::EmptyCell: return "EmptyCell";
        case ErrorCode::WrongSpecialization: return "WrongSpecialization";
        case ErrorCode::OracleTooLarge: return "OracleTooLarge";
        case ErrorCode::BadSupport: return "BadSupport";
        case ErrorCode::BadParameter: return "BadParameter";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::BadSampleSize: return "BadSampleSize";
        case ErrorCode::QuadratureFailed: return "QuadratureFailed";
        case ErrorCode::UnsupportedSupport: return "UnsupportedSupport";
        case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
        case ErrorCode::BadConfig: return "BadConfig";
        case ErrorCode::OrderDetectionFailed: return "OrderDetectionFailed";
    }
    return "UnknownError";
}

// Single exception type for all domain errors; `code()` identifies the
// contract violation so tests can assert on it without string matching.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace pcd
