#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liemech {

enum class ErrorKind {
    NotSkew,
    NearAngleLimit,
    OutOfTrustRegion,
    NotUnitAxis,
    ZeroInput,
    UnknownGroup,
    InvalidRank,
    NotIrreducible,
    NonIntegerEntry,
    Inadmissible,
    Unclassifiable,
    MissingGamma,
    NonFiniteState,
    TooFewSamples,
    NonUniformDt,
    OddDimension,
    InvalidArgument,
    ParseError,
    MissingField,
    ValidationError,
    IoError,
    UsageError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace liemech
