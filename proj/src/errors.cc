#include "srbm2d/errors.h"

namespace srbm2d {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kZeroDirection: return "ZeroDirection";
    case ErrorCode::kUnclassifiable: return "Unclassifiable";
    case ErrorCode::kInconsistentCriteria: return "InconsistentCriteria";
    case ErrorCode::kOutOfSupport: return "OutOfSupport";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kImpossibleCase: return "ImpossibleCase";
    case ErrorCode::kInsufficientHorizon: return "InsufficientHorizon";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kNoSolution: return "NoSolution";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kNoFeasiblePath: return "NoFeasiblePath";
  }
  return "Unknown";
}

}  // namespace srbm2d
