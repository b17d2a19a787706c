#include "vw/error.hpp"

namespace vw {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorCode::EllipticityViolated: return "EllipticityViolated";
    case ErrorCode::ResolutionInsufficient: return "ResolutionInsufficient";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace vw
