#pragma once

// First-order rewriting modulo beta and definition unfolding.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dkm/syntax.hpp"
#include "dkm/term.hpp"

namespace dkm {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

struct CompiledRule {
  RewriteRule rule;
  std::string head;
  std::size_t arity = 0;
};

/// Rules indexed by the head constant of their left-hand side. Within a head,
/// rules are tried in declaration order.
class CompiledRuleSet {
 public:
  void add(CompiledRule rule);

  const std::vector<CompiledRule>* rulesFor(std::string_view head) const;
  std::size_t size() const { return count_; }
  std::size_t headCount() const { return byHead_.size(); }
  const std::map<std::string, std::vector<CompiledRule>, std::less<>>& byHead() const {
    return byHead_;
  }

 private:
  std::map<std::string, std::vector<CompiledRule>, std::less<>> byHead_;
  std::size_t count_ = 0;
};

/// Closed bodies of definitions, unfolded at the head by whnf.
using DefinitionMap = std::unordered_map<std::string, Term>;

/// Validates the left-hand side shape. Throws NO_HEAD_CONSTANT,
/// HIGHER_ORDER_PATTERN or NONLINEAR_PATTERN.
CompiledRule compileRule(const RewriteRule& rule);
CompiledRuleSet compileRules(const std::vector<RewriteRule>& rules);

/// Result of a successful match: values[i] binds de Bruijn index i of the
/// rule context, i.e. context[n - 1 - i].
struct Match {
  std::vector<Term> values;

  const Term& valueOf(const RewriteRule& rule, std::string_view name) const;
};

/// Purely syntactic first-order matching of the whole left-hand side.
std::optional<Match> matchRule(const RewriteRule& rule, const Term& t);

/// Reduction with a step budget shared by every call made through one
/// instance. Running out throws FUEL_EXHAUSTED.
class Reducer {
 public:
  Reducer(const CompiledRuleSet& rules, const DefinitionMap& defs,
          std::uint64_t fuel = kDefaultFuel);

  Term whnf(const Term& t);
  Term nf(const Term& t);
  bool conv(const Term& t, const Term& u);

  void refuel() { remaining_ = budget_; }
  std::uint64_t remaining() const { return remaining_; }
  std::uint64_t stepsTaken() const { return budget_ - remaining_; }

 private:
  void spend();
  bool matchArg(const Term& pattern, const Term& t, std::vector<Term>& values);
  bool convSpines(const Term& t, const Term& u);

  const CompiledRuleSet& rules_;
  const DefinitionMap& defs_;
  std::uint64_t budget_;
  std::uint64_t remaining_;
};

Term whnf(const CompiledRuleSet& rules, const DefinitionMap& defs, const Term& t,
          std::uint64_t fuel = kDefaultFuel);
Term nf(const CompiledRuleSet& rules, const DefinitionMap& defs, const Term& t,
        std::uint64_t fuel = kDefaultFuel);
bool conv(const CompiledRuleSet& rules, const DefinitionMap& defs, const Term& t, const Term& u,
          std::uint64_t fuel = kDefaultFuel);

}  // namespace dkm
