#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dkm {

enum class ErrorCode {
  Parse,
  Scope,
  NonlinearPattern,
  HigherOrderPattern,
  NoHeadConstant,
  FuelExhausted,
  Unbound,
  NotAFunction,
  SortError,
  ConvFail,
  DuplicateName,
  RuleContextInferenceFail,
  RuleIllTyped,
  UnknownTheory,
  IllTypedSubject,
  NotInS,
  TranslationUnsound,
};

/// Machine-readable code, e.g. "CONV_FAIL".
std::string_view codeName(ErrorCode code);

/// 1-based, inclusive start, exclusive end column.
struct SourceSpan {
  std::string file;
  int startLine = 1;
  int startCol = 1;
  int endLine = 1;
  int endCol = 1;
};

struct Diagnostic {
  ErrorCode code;
  std::string message;
  std::optional<SourceSpan> span;

  /// "file:line:col: CODE: message" (location omitted when there is no span).
  std::string format() const;
};

class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic d);
  DiagnosticError(ErrorCode code, std::string message,
                  std::optional<SourceSpan> span = std::nullopt);

  const Diagnostic& diagnostic() const noexcept { return diag_; }
  ErrorCode code() const noexcept { return diag_.code; }

  /// Attaches a span if the error does not carry one yet.
  DiagnosticError withSpan(const SourceSpan& span) const;

 private:
  Diagnostic diag_;
};

}  // namespace dkm
