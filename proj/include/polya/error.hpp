#pragma once

#include <stdexcept>
#include <string>

namespace polya {

enum class ErrorKind {
    InvalidArgument,
    ToleranceNotMet,
    OverflowGuard,
    NotAZero,
    SimplicityIndeterminate,
    NewtonStall,
    NoZeros,
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what)
{
    if (!condition) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace polya
