#include "nfepm/errors.hpp"

namespace nfepm {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ValidityViolation: return "ValidityViolation";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::NonPositiveDistance: return "NonPositiveDistance";
        case ErrorKind::CoincidentPoints: return "CoincidentPoints";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::ZeroNoise: return "ZeroNoise";
        case ErrorKind::NegativeRadicand: return "NegativeRadicand";
        case ErrorKind::DegenerateElements: return "DegenerateElements";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::UnsupportedRegion: return "UnsupportedRegion";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::AttitudeSingularity: return "AttitudeSingularity";
        case ErrorKind::SingularFIM: return "SingularFIM";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

}  // namespace nfepm
