#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "dkm/diagnostic.hpp"
#include "dkm/term.hpp"

namespace dkm {

/// A pattern variable of a rewrite rule. Its type, when given, lives in the
/// scope of the variables declared before it.
struct RuleVar {
  std::string name;
  std::optional<Term> type;
};

/// Context variables act as outer binders of lhs and rhs: with n variables,
/// `Var i` in lhs/rhs refers to context[n - 1 - i].
struct RewriteRule {
  std::vector<RuleVar> context;
  Term lhs;
  Term rhs;
};

struct ConstDecl {
  std::string name;
  Term type;
};

struct Definition {
  std::string name;
  Term type;
  Term body;
};

struct Declaration {
  std::variant<ConstDecl, Definition, RewriteRule> value;
  SourceSpan span;

  bool isRule() const { return std::holds_alternative<RewriteRule>(value); }
  bool isDefinition() const { return std::holds_alternative<Definition>(value); }
  bool isConstant() const { return std::holds_alternative<ConstDecl>(value); }
  /// Declared name; empty for rules.
  const std::string& name() const;
};

using NameSet = std::unordered_set<std::string>;

/// Parses a whole file. `known` holds constants already in scope (e.g. the
/// theory's); names declared by the file are added as parsing proceeds.
/// Throws DiagnosticError with code PARSE or SCOPE.
std::vector<Declaration> parse(std::string_view text, const std::string& fileName = "",
                               const NameSet& known = {});

/// Parses a single term. `bound` lists binder names in scope, innermost last.
Term parseTerm(std::string_view text, const NameSet& known,
               const std::vector<std::string>& bound = {});

/// Prints a term in a context of binder names (innermost last).
std::string print(const Term& t, const std::vector<std::string>& context = {});
std::string print(const Declaration& d);
/// One declaration per line.
std::string printFile(const std::vector<Declaration>& decls);

bool isIdentifier(std::string_view s);
bool isReservedWord(std::string_view s);

}  // namespace dkm
