#include "guarded/error.hpp"

namespace guarded {

auto to_string(ErrorCode code) -> std::string_view {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::CliqueWidthUnsupported: return "CliqueWidthUnsupported";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::GuardViolation: return "GuardViolation";
    case ErrorCode::StrategyIncomplete: return "StrategyIncomplete";
    case ErrorCode::NotReflexive: return "NotReflexive";
    case ErrorCode::EdgeUncovered: return "EdgeUncovered";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NotVertexConnected: return "NotVertexConnected";
    case ErrorCode::NotACoalgebra: return "NotACoalgebra";
    case ErrorCode::NoDecomposition: return "NoDecomposition";
    case ErrorCode::SpanInvalid: return "SpanInvalid";
    case ErrorCode::ModeUnsupported: return "ModeUnsupported";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace guarded
