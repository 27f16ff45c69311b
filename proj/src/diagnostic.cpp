#include "dkm/diagnostic.hpp"

namespace dkm {

std::string_view codeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Scope: return "SCOPE";
    case ErrorCode::NonlinearPattern: return "NONLINEAR_PATTERN";
    case ErrorCode::HigherOrderPattern: return "HIGHER_ORDER_PATTERN";
    case ErrorCode::NoHeadConstant: return "NO_HEAD_CONSTANT";
    case ErrorCode::FuelExhausted: return "FUEL_EXHAUSTED";
    case ErrorCode::Unbound: return "UNBOUND";
    case ErrorCode::NotAFunction: return "NOT_A_FUNCTION";
    case ErrorCode::SortError: return "SORT_ERROR";
    case ErrorCode::ConvFail: return "CONV_FAIL";
    case ErrorCode::DuplicateName: return "DUPLICATE_NAME";
    case ErrorCode::RuleContextInferenceFail: return "RULE_CONTEXT_INFERENCE_FAIL";
    case ErrorCode::RuleIllTyped: return "RULE_ILL_TYPED";
    case ErrorCode::UnknownTheory: return "UNKNOWN_THEORY";
    case ErrorCode::IllTypedSubject: return "ILL_TYPED_SUBJECT";
    case ErrorCode::NotInS: return "NOT_IN_S";
    case ErrorCode::TranslationUnsound: return "TRANSLATION_UNSOUND";
  }
  return "UNKNOWN";
}

std::string Diagnostic::format() const {
  std::string out;
  if (span) {
    out += span->file.empty() ? std::string("<input>") : span->file;
    out += ':' + std::to_string(span->startLine) + ':' + std::to_string(span->startCol) + ": ";
  }
  out += codeName(code);
  out += ": ";
  out += message;
  return out;
}

DiagnosticError::DiagnosticError(Diagnostic d)
    : std::runtime_error(d.format()), diag_(std::move(d)) {}

DiagnosticError::DiagnosticError(ErrorCode code, std::string message,
                                 std::optional<SourceSpan> span)
    : DiagnosticError(Diagnostic{code, std::move(message), std::move(span)}) {}

DiagnosticError DiagnosticError::withSpan(const SourceSpan& span) const {
  if (diag_.span) return *this;
  Diagnostic d = diag_;
  d.span = span;
  return DiagnosticError(std::move(d));
}

}  // namespace dkm
