#pragma once

#include <stdexcept>
#include <string>

namespace warplab {

enum class ErrorKind {
    InvalidParameter,
    RootBracketingFailure,
    DomainExceeded,
    IntegrationFailure,
    OutOfDomain,
    UnsupportedFiber,
    WrongFamily,
    OrderingViolation,
    SpecMismatch,
    DegenerateMetric,
    EmptyResult,
    OpenBoundary,
    HemisphereViolation,
    ConstantInapplicable,
    RegionViolation,
    NotMinimal,
    PreconditionUnmet,
    WindowTooSmall,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind and a message naming the
/// violated constraint (e.g. "m>2q").
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace warplab
