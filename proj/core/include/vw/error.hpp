#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vw {

enum class ErrorCode {
    InvalidArgument,
    ZeroMass,
    UnsupportedVariant,
    EllipticityViolated,
    ResolutionInsufficient,
    SingularSystem,
    QuadratureUnderResolved,
    UnknownCase,
    IoError,
    ParseError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code lets
/// callers branch on the failure class without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(ErrorCode::ParseError, what), line_(line), column_(column) {}

    /// 1-based; 0 when the location is unknown.
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace vw
