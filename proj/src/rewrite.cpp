#include "dkm/rewrite.hpp"

namespace dkm {

void CompiledRuleSet::add(CompiledRule rule) {
  std::string head = rule.head;
  byHead_[head].push_back(std::move(rule));
  ++count_;
}

const std::vector<CompiledRule>* CompiledRuleSet::rulesFor(std::string_view head) const {
  auto it = byHead_.find(head);
  return it == byHead_.end() ? nullptr : &it->second;
}

namespace {

void checkPatternArg(const Term& p, std::vector<bool>& seen) {
  switch (p.kind()) {
    case TermKind::Var: {
      std::uint32_t i = p.index();
      if (i >= seen.size()) {
        throw DiagnosticError(ErrorCode::HigherOrderPattern,
                              "left-hand side mentions a variable outside the rule context");
      }
      if (seen[i]) {
        throw DiagnosticError(ErrorCode::NonlinearPattern,
                              "pattern variable occurs more than once in the left-hand side");
      }
      seen[i] = true;
      return;
    }
    case TermKind::Sort:
    case TermKind::Const:
      return;
    case TermKind::Lam:
    case TermKind::Pi:
      throw DiagnosticError(ErrorCode::HigherOrderPattern,
                            "left-hand side contains a binder");
    case TermKind::App: {
      std::vector<Term> args;
      Term head = spine(p, args);
      if (!head.is(TermKind::Const)) {
        throw DiagnosticError(ErrorCode::HigherOrderPattern,
                              "sub-pattern is not headed by a constant");
      }
      for (const Term& a : args) checkPatternArg(a, seen);
      return;
    }
  }
}

}  // namespace

CompiledRule compileRule(const RewriteRule& rule) {
  std::vector<Term> args;
  Term head = spine(rule.lhs, args);
  if (!head.is(TermKind::Const) || args.empty()) {
    throw DiagnosticError(ErrorCode::NoHeadConstant,
                          "left-hand side must be a constant applied to arguments");
  }
  std::vector<bool> seen(rule.context.size(), false);
  for (const Term& a : args) checkPatternArg(a, seen);
  return CompiledRule{rule, head.name(), args.size()};
}

CompiledRuleSet compileRules(const std::vector<RewriteRule>& rules) {
  CompiledRuleSet set;
  for (const RewriteRule& r : rules) set.add(compileRule(r));
  return set;
}

const Term& Match::valueOf(const RewriteRule& rule, std::string_view name) const {
  const std::size_t n = rule.context.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (rule.context[k].name == name) return values.at(n - 1 - k);
  }
  throw std::out_of_range("no pattern variable named " + std::string(name));
}

namespace {

bool matchSyntactic(const Term& p, const Term& t, std::vector<Term>& values) {
  switch (p.kind()) {
    case TermKind::Var:
      values[p.index()] = t;
      return true;
    case TermKind::Sort:
      return t.is(TermKind::Sort) && t.sortName() == p.sortName();
    case TermKind::Const:
      return t.isConst(p.name());
    case TermKind::App:
      return t.is(TermKind::App) && matchSyntactic(p.fun(), t.fun(), values) &&
             matchSyntactic(p.arg(), t.arg(), values);
    default:
      return false;
  }
}

}  // namespace

std::optional<Match> matchRule(const RewriteRule& rule, const Term& t) {
  Match m;
  m.values.resize(rule.context.size());
  if (!matchSyntactic(rule.lhs, t, m.values)) return std::nullopt;
  return m;
}

Reducer::Reducer(const CompiledRuleSet& rules, const DefinitionMap& defs, std::uint64_t fuel)
    : rules_(rules), defs_(defs), budget_(fuel), remaining_(fuel) {}

void Reducer::spend() {
  if (remaining_ == 0) {
    throw DiagnosticError(ErrorCode::FuelExhausted,
                          "reduction exceeded " + std::to_string(budget_) +
                              " steps; the rewrite rules may not terminate");
  }
  --remaining_;
}

bool Reducer::matchArg(const Term& p, const Term& t, std::vector<Term>& values) {
  if (p.is(TermKind::Var)) {
    values[p.index()] = t;
    return true;
  }
  Term w = whnf(t);
  if (p.is(TermKind::Sort)) return w.is(TermKind::Sort) && w.sortName() == p.sortName();
  std::vector<Term> pargs;
  std::vector<Term> targs;
  Term ph = spine(p, pargs);
  Term th = spine(w, targs);
  if (!th.isConst(ph.name()) || pargs.size() != targs.size()) return false;
  for (std::size_t i = 0; i < pargs.size(); ++i) {
    if (!matchArg(pargs[i], targs[i], values)) return false;
  }
  return true;
}

Term Reducer::whnf(const Term& start) {
  Term t = start;
  std::vector<Term> args;
  for (;;) {
    Term head = spine(t, args);
    if (head.is(TermKind::Lam) && !args.empty()) {
      spend();
      Term reduced = subst(head.body(), args[0]);
      t = Term::app(std::move(reduced), std::vector<Term>(args.begin() + 1, args.end()));
      continue;
    }
    if (!head.is(TermKind::Const)) return t;
    if (auto def = defs_.find(head.name()); def != defs_.end()) {
      spend();
      t = Term::app(def->second, args);
      continue;
    }
    const std::vector<CompiledRule>* candidates = rules_.rulesFor(head.name());
    if (!candidates) return t;
    bool fired = false;
    for (const CompiledRule& cr : *candidates) {
      if (cr.arity > args.size()) continue;
      std::vector<Term> pargs;
      spine(cr.rule.lhs, pargs);
      std::vector<Term> values(cr.rule.context.size());
      bool ok = true;
      for (std::size_t i = 0; i < cr.arity && ok; ++i) {
        // Keep reduced arguments so later candidates do not redo the work.
        if (!pargs[i].is(TermKind::Var)) args[i] = whnf(args[i]);
        ok = matchArg(pargs[i], args[i], values);
      }
      if (!ok) continue;
      spend();
      Term rhs = instantiate(cr.rule.rhs, values);
      t = Term::app(std::move(rhs), std::vector<Term>(args.begin() + cr.arity, args.end()));
      fired = true;
      break;
    }
    if (!fired) return Term::app(head, args);
  }
}

Term Reducer::nf(const Term& t) {
  Term w = whnf(t);
  switch (w.kind()) {
    case TermKind::Lam:
      return Term::lam(w.name(), nf(w.binderType()), nf(w.body()));
    case TermKind::Pi:
      return Term::pi(w.name(), nf(w.domain()), nf(w.codomain()));
    case TermKind::App: {
      std::vector<Term> args;
      Term head = spine(w, args);
      for (Term& a : args) a = nf(a);
      return Term::app(head, args);
    }
    default:
      return w;
  }
}

bool Reducer::conv(const Term& t, const Term& u) {
  if (alphaEq(t, u)) return true;
  Term a = whnf(t);
  Term b = whnf(u);
  if (a.kind() != b.kind()) {
    // An applied spine and a bare head can still differ only in kind.
    bool aSpine = a.is(TermKind::App) || a.is(TermKind::Var) || a.is(TermKind::Const);
    bool bSpine = b.is(TermKind::App) || b.is(TermKind::Var) || b.is(TermKind::Const);
    if (!(aSpine && bSpine)) return false;
  }
  switch (a.kind()) {
    case TermKind::Sort:
      return a.sortName() == b.sortName();
    case TermKind::Lam:
    case TermKind::Pi:
      return conv(a.fun(), b.fun()) && conv(a.arg(), b.arg());
    default:
      return convSpines(a, b);
  }
}

bool Reducer::convSpines(const Term& t, const Term& u) {
  std::vector<Term> targs;
  std::vector<Term> uargs;
  Term th = spine(t, targs);
  Term uh = spine(u, uargs);
  if (targs.size() != uargs.size() || th.kind() != uh.kind()) return false;
  switch (th.kind()) {
    case TermKind::Var:
      if (th.index() != uh.index()) return false;
      break;
    case TermKind::Const:
      if (th.name() != uh.name()) return false;
      break;
    default:
      if (!alphaEq(th, uh)) return false;
  }
  for (std::size_t i = 0; i < targs.size(); ++i) {
    if (!conv(targs[i], uargs[i])) return false;
  }
  return true;
}

Term whnf(const CompiledRuleSet& rules, const DefinitionMap& defs, const Term& t,
          std::uint64_t fuel) {
  return Reducer(rules, defs, fuel).whnf(t);
}

Term nf(const CompiledRuleSet& rules, const DefinitionMap& defs, const Term& t,
        std::uint64_t fuel) {
  return Reducer(rules, defs, fuel).nf(t);
}

bool conv(const CompiledRuleSet& rules, const DefinitionMap& defs, const Term& t, const Term& u,
          std::uint64_t fuel) {
  return Reducer(rules, defs, fuel).conv(t, u);
}

}  // namespace dkm
