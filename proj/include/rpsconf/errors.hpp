#pragma once

#include <stdexcept>
#include <string>

namespace rpsconf {

/// Error categories raised by the library. Validation errors describe bad
/// input data; domain errors describe requests outside an operation's domain.
enum class ErrorKind {
    UnknownElement,
    DuplicateElement,
    EmptyFocalSet,
    MassOutOfRange,
    MassSumViolation,
    CodeOutOfRange,
    ParameterOutOfRange,
    UnboundedUniform,
    FrameMismatch,
    SchemaError,
    UnknownBody,
    UnknownTable,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UnknownElement: return "UnknownElement";
        case ErrorKind::DuplicateElement: return "DuplicateElement";
        case ErrorKind::EmptyFocalSet: return "EmptyFocalSet";
        case ErrorKind::MassOutOfRange: return "MassOutOfRange";
        case ErrorKind::MassSumViolation: return "MassSumViolation";
        case ErrorKind::CodeOutOfRange: return "CodeOutOfRange";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::UnboundedUniform: return "UnboundedUniform";
        case ErrorKind::FrameMismatch: return "FrameMismatch";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::UnknownBody: return "UnknownBody";
        case ErrorKind::UnknownTable: return "UnknownTable";
    }
    return "Unknown";
}

/// Distinguishes data-validation failures (CLI exit 2) from
/// computation-domain failures (CLI exit 3).
inline bool is_validation_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UnknownElement:
        case ErrorKind::DuplicateElement:
        case ErrorKind::EmptyFocalSet:
        case ErrorKind::MassOutOfRange:
        case ErrorKind::MassSumViolation:
        case ErrorKind::SchemaError:
        case ErrorKind::UnknownBody:
        case ErrorKind::UnknownTable:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace rpsconf
