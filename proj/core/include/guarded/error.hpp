#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace guarded {

enum class ErrorCode {
  ArityMismatch,
  UnknownElement,
  UnknownRelation,
  CliqueWidthUnsupported,
  BudgetExceeded,
  NotAHomomorphism,
  GuardViolation,
  StrategyIncomplete,
  NotReflexive,
  EdgeUncovered,
  NotMinimal,
  NotVertexConnected,
  NotACoalgebra,
  NoDecomposition,
  SpanInvalid,
  ModeUnsupported,
  Parse,
};

auto to_string(ErrorCode code) -> std::string_view;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  auto code() const noexcept -> ErrorCode { return code_; }
  auto detail() const -> const std::string& { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace guarded
