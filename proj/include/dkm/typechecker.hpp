#pragma once

// Bidirectional type checking for the lambda-Pi calculus modulo rewriting,
// and elaboration of declaration lists into frozen theories.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dkm/rewrite.hpp"
#include "dkm/syntax.hpp"

namespace dkm {

/// Where a constant came from: the theory file itself, or a user file
/// elaborated on top of it.
enum class Origin { Framework, User };

struct ConstantInfo {
  std::string name;
  Term type;
  std::optional<Term> body;  // set for definitions
  Origin origin = Origin::Framework;
  SourceSpan span;

  bool isDefinition() const { return body.has_value(); }
};

/// An ordered signature. Theories are only built by Elaborator and never
/// change afterwards.
class Theory {
 public:
  const std::string& id() const { return id_; }

  const ConstantInfo* find(std::string_view name) const;
  /// Constants and definitions in declaration order.
  const std::vector<ConstantInfo>& entries() const { return entries_; }
  /// Number of declared constants, definitions excluded.
  std::size_t constantCount() const;
  std::size_t definitionCount() const;

  const CompiledRuleSet& rules() const { return rules_; }
  const std::vector<RewriteRule>& ruleList() const { return ruleList_; }
  const DefinitionMap& definitions() const { return definitions_; }
  NameSet names() const;

 private:
  friend class Elaborator;

  std::string id_;
  std::vector<ConstantInfo> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  CompiledRuleSet rules_;
  std::vector<RewriteRule> ruleList_;
  DefinitionMap definitions_;
};

/// Typing context: binder types, innermost last. Each type lives in the
/// scope of the entries before it.
class Context {
 public:
  void push(std::string name, Term type);
  void pop();
  std::size_t size() const { return types_.size(); }
  /// Type of de Bruijn index i, valid in the full context.
  Term typeOf(std::uint32_t index) const;
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<Term> types_;
  std::vector<std::string> names_;
};

class TypeChecker {
 public:
  explicit TypeChecker(const Theory& theory, std::uint64_t fuel = kDefaultFuel);

  /// Throws UNBOUND, NOT_A_FUNCTION, SORT_ERROR, CONV_FAIL or FUEL_EXHAUSTED.
  Term infer(Context& ctx, const Term& t);
  void check(Context& ctx, const Term& t, const Term& type);

  /// `t` must be a type: returns the sort it inhabits.
  Sort sortOf(Context& ctx, const Term& t);

  /// Types of the rule's context variables (each in the scope of the ones
  /// before it): annotations as written, the rest read off the lhs spine.
  std::vector<Term> inferRuleContext(const RewriteRule& rule);
  /// Throws RULE_CONTEXT_INFERENCE_FAIL or RULE_ILL_TYPED.
  void checkRule(const RewriteRule& rule);

  Reducer& reducer() { return reducer_; }
  const Theory& theory() const { return theory_; }

 private:
  Term whnf(const Term& t) { return reducer_.whnf(t); }
  [[noreturn]] void convFail(Context& ctx, const Term& t, const Term& expected,
                             const Term& actual);
  void walkPattern(const Term& pattern, std::vector<std::optional<Term>>& types);

  const Theory& theory_;
  Reducer reducer_;
};

Term infer(const Theory& th, const Context& ctx, const Term& t);
void check(const Theory& th, const Context& ctx, const Term& t, const Term& type);
void checkRule(const Theory& th, const RewriteRule& rule);

/// Builds a theory declaration by declaration. Every declaration is checked
/// against the prefix elaborated before it.
class Elaborator {
 public:
  explicit Elaborator(std::string id, std::uint64_t fuel = kDefaultFuel);
  /// Extends a copy of `base`; new entries are tagged Origin::User.
  explicit Elaborator(const Theory& base, std::uint64_t fuel = kDefaultFuel);

  /// Throws DiagnosticError carrying the declaration's span.
  void add(const Declaration& d);
  const Theory& current() const { return theory_; }
  Theory freeze() && { return std::move(theory_); }

 private:
  Theory theory_;
  Origin origin_;
  std::uint64_t fuel_;
};

Theory elaborate(const std::vector<Declaration>& decls, std::string id = "",
                 std::uint64_t fuel = kDefaultFuel);
Theory extend(const Theory& base, const std::vector<Declaration>& decls,
              std::uint64_t fuel = kDefaultFuel);

}  // namespace dkm
