#pragma once

// Subset-S analysis of proofs written against the Calculus of Constructions
// theory, erasure of vacuous dependencies, translation to simple type theory,
// and ingredient (constant usage) reports.
//
// A term is in S when every occurrence of `arrow` and `imp` is applied to two
// arguments, the second a lambda whose variable does not occur in its body,
// and `pi` does not occur at all.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dkm/typechecker.hpp"

namespace dkm {

enum class ViolationKind { ArrowDependent, ImpDependent, UsesPi, ArrowPartial, ImpPartial };

std::string_view violationName(ViolationKind kind);

/// Which part of a declaration a position is relative to: "type", "body",
/// "lhs", "rhs" or "context.<k>".
struct Violation {
  ViolationKind kind;
  std::string part;
  Position position;
};

struct IngredientSet {
  std::set<std::string> framework;
  std::set<std::string> library;
  std::set<std::string> axioms;

  std::set<std::string> all() const;
};

struct AnalysisReport {
  std::string subject;
  std::string theoryId;
  bool inS = true;
  std::vector<Violation> violations;
  IngredientSet ingredients;
  /// Verdict for the normal form of the subject; unset if normalization failed.
  std::optional<bool> normalFormInS;
  /// User declarations mentioned by the subject that are themselves not in S.
  std::vector<std::string> nonSDependencies;
};

/// Violations of S inside one term; positions are relative to `t`.
std::vector<Violation> findViolations(const Term& t, const std::string& part = "");

/// Display name for a declaration: its name, or "rule#k" (1-based among rules).
std::string subjectName(const Declaration& d, std::size_t ruleOrdinal);

/// Terms a declaration consists of, tagged with their part names.
std::vector<std::pair<std::string, Term>> declarationParts(const Declaration& d);

/// Classifies constants against a theory: framework constants come from the
/// theory file, user definitions and non-proof constants are library, and user
/// constants whose type ends in `eps _` are axioms.
IngredientSet classify(const Theory& th, const std::set<std::string>& names);

/// `subject` must already be part of `th` or elaborate on top of it;
/// otherwise throws ILL_TYPED_SUBJECT.
AnalysisReport analyze(const Theory& th, const Declaration& subject);

/// Elaborates `decls` on top of `base` and analyzes each one in order.
std::vector<AnalysisReport> analyzeFile(const Theory& base, const std::vector<Declaration>& decls);

/// Replaces `arrow A (\x => B)` and `imp A (\x => B)` with x unused by
/// `arrow A B` and `imp A B`, everywhere including binder annotations.
/// Throws NOT_IN_S when a term outside S is met.
Term eraseToSTT(const Term& t);
Declaration eraseToSTT(const Declaration& d);

class NotInSError : public DiagnosticError {
 public:
  NotInSError(std::string message, std::vector<AnalysisReport> reports);
  const std::vector<AnalysisReport>& reports() const { return reports_; }

 private:
  std::vector<AnalysisReport> reports_;
};

struct TranslationResult {
  std::vector<Declaration> declarations;
  std::vector<std::pair<std::string, std::string>> nameMapping;
  std::vector<AnalysisReport> reports;
};

/// Translates user declarations written against `cocBase` (the Calculus of
/// Constructions theory by default) into declarations checked against
/// `sttBase`. Throws NotInSError, ILL_TYPED_SUBJECT or TRANSLATION_UNSOUND.
TranslationResult translateFile(const std::vector<Declaration>& cocDecls);
TranslationResult translateFile(const std::vector<Declaration>& cocDecls, const Theory& cocBase,
                                const Theory& sttBase);

/// Per declaration, the constants it mentions directly plus, transitively,
/// everything mentioned by the definitions it uses.
std::vector<std::pair<std::string, IngredientSet>> ingredientReport(
    const Theory& base, const std::vector<Declaration>& decls);

}  // namespace dkm
