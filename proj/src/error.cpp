#include "liemech/error.hpp"

namespace liemech {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotSkew: return "NotSkew";
        case ErrorKind::NearAngleLimit: return "NearAngleLimit";
        case ErrorKind::OutOfTrustRegion: return "OutOfTrustRegion";
        case ErrorKind::NotUnitAxis: return "NotUnitAxis";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::UnknownGroup: return "UnknownGroup";
        case ErrorKind::InvalidRank: return "InvalidRank";
        case ErrorKind::NotIrreducible: return "NotIrreducible";
        case ErrorKind::NonIntegerEntry: return "NonIntegerEntry";
        case ErrorKind::Inadmissible: return "Inadmissible";
        case ErrorKind::Unclassifiable: return "Unclassifiable";
        case ErrorKind::MissingGamma: return "MissingGamma";
        case ErrorKind::NonFiniteState: return "NonFiniteState";
        case ErrorKind::TooFewSamples: return "TooFewSamples";
        case ErrorKind::NonUniformDt: return "NonUniformDt";
        case ErrorKind::OddDimension: return "OddDimension";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::MissingField: return "MissingField";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::UsageError: return "UsageError";
    }
    return "Unknown";
}

}  // namespace liemech
