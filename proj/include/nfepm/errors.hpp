#pragma once

#include <stdexcept>
#include <string>

namespace nfepm {

enum class ErrorKind {
    InvalidArgument,
    ValidityViolation,
    IndexOutOfRange,
    NonPositiveDistance,
    CoincidentPoints,
    DivisionByZero,
    ZeroNoise,
    NegativeRadicand,
    DegenerateElements,
    NonFinite,
    UnsupportedRegion,
    QuadratureFailure,
    AttitudeSingularity,
    SingularFIM,
    ParseError,
    InvariantViolation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

inline void require(bool ok, ErrorKind kind, const std::string& what) {
    if (!ok) throw Error(kind, what);
}

}  // namespace nfepm
