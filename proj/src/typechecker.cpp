#include "dkm/typechecker.hpp"

namespace dkm {

const ConstantInfo* Theory::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::size_t Theory::constantCount() const {
  std::size_t n = 0;
  for (const ConstantInfo& c : entries_) n += c.isDefinition() ? 0 : 1;
  return n;
}

std::size_t Theory::definitionCount() const { return entries_.size() - constantCount(); }

NameSet Theory::names() const {
  NameSet out;
  for (const ConstantInfo& c : entries_) out.insert(c.name);
  return out;
}

void Context::push(std::string name, Term type) {
  names_.push_back(std::move(name));
  types_.push_back(std::move(type));
}

void Context::pop() {
  names_.pop_back();
  types_.pop_back();
}

Term Context::typeOf(std::uint32_t index) const {
  return shift(types_[types_.size() - 1 - index], index + 1);
}

TypeChecker::TypeChecker(const Theory& theory, std::uint64_t fuel)
    : theory_(theory), reducer_(theory.rules(), theory.definitions(), fuel) {}

namespace {

std::string describe(Reducer& normalizer, const Term& t, const std::vector<std::string>& names) {
  try {
    return print(normalizer.nf(t), names);
  } catch (const DiagnosticError&) {
    return print(t, names);
  }
}

struct Scoped {
  Context& ctx;
  Scoped(Context& c, std::string name, Term type) : ctx(c) { ctx.push(std::move(name), std::move(type)); }
  ~Scoped() { ctx.pop(); }
};

}  // namespace

void TypeChecker::convFail(Context& ctx, const Term& t, const Term& expected, const Term& actual) {
  Reducer normalizer(theory_.rules(), theory_.definitions(), 100'000);
  throw DiagnosticError(ErrorCode::ConvFail,
                        "'" + print(t, ctx.names()) + "' has type '" +
                            describe(normalizer, actual, ctx.names()) + "' but '" +
                            describe(normalizer, expected, ctx.names()) + "' was expected");
}

Sort TypeChecker::sortOf(Context& ctx, const Term& t) {
  Term s = whnf(infer(ctx, t));
  if (!s.is(TermKind::Sort)) {
    throw DiagnosticError(ErrorCode::SortError,
                          "'" + print(t, ctx.names()) + "' is not a type (its type is '" +
                              print(s, ctx.names()) + "')");
  }
  return s.sortName();
}

Term TypeChecker::infer(Context& ctx, const Term& t) {
  switch (t.kind()) {
    case TermKind::Sort:
      if (t.sortName() == Sort::Kind) {
        throw DiagnosticError(ErrorCode::SortError, "Kind has no type");
      }
      return Term::sort(Sort::Kind);
    case TermKind::Var:
      if (t.index() >= ctx.size()) {
        throw DiagnosticError(ErrorCode::Unbound,
                              "variable #" + std::to_string(t.index()) + " is not bound");
      }
      return ctx.typeOf(t.index());
    case TermKind::Const: {
      const ConstantInfo* c = theory_.find(t.name());
      if (!c) throw DiagnosticError(ErrorCode::Unbound, "unknown constant '" + t.name() + "'");
      return c->type;
    }
    case TermKind::App: {
      Term fnType = whnf(infer(ctx, t.fun()));
      if (!fnType.is(TermKind::Pi)) {
        throw DiagnosticError(ErrorCode::NotAFunction,
                              "'" + print(t.fun(), ctx.names()) + "' has type '" +
                                  print(fnType, ctx.names()) +
                                  "', which is not a product, so it cannot be applied");
      }
      check(ctx, t.arg(), fnType.domain());
      return subst(fnType.codomain(), t.arg());
    }
    case TermKind::Lam: {
      if (sortOf(ctx, t.binderType()) != Sort::Type) {
        throw DiagnosticError(ErrorCode::SortError,
                              "binder type '" + print(t.binderType(), ctx.names()) +
                                  "' must have sort Type");
      }
      Scoped s(ctx, t.name(), t.binderType());
      Term bodyType = infer(ctx, t.body());
      if (bodyType.is(TermKind::Sort) && bodyType.sortName() == Sort::Kind) {
        throw DiagnosticError(ErrorCode::SortError, "cannot abstract over a term of type Kind");
      }
      return Term::pi(t.name(), t.binderType(), std::move(bodyType));
    }
    case TermKind::Pi: {
      if (sortOf(ctx, t.domain()) != Sort::Type) {
        throw DiagnosticError(ErrorCode::SortError,
                              "product domain '" + print(t.domain(), ctx.names()) +
                                  "' must have sort Type");
      }
      Scoped s(ctx, t.name(), t.domain());
      return Term::sort(sortOf(ctx, t.codomain()));
    }
  }
  return t;
}

void TypeChecker::check(Context& ctx, const Term& t, const Term& type) {
  if (t.is(TermKind::Lam)) {
    Term expected = whnf(type);
    if (expected.is(TermKind::Pi)) {
      if (sortOf(ctx, t.binderType()) != Sort::Type) {
        throw DiagnosticError(ErrorCode::SortError,
                              "binder type '" + print(t.binderType(), ctx.names()) +
                                  "' must have sort Type");
      }
      if (!reducer_.conv(t.binderType(), expected.domain())) {
        throw DiagnosticError(
            ErrorCode::ConvFail,
            "binder type '" + print(t.binderType(), ctx.names()) +
                "' does not match the expected domain '" + print(expected.domain(), ctx.names()) +
                "'");
      }
      Scoped s(ctx, t.name(), t.binderType());
      check(ctx, t.body(), expected.codomain());
      return;
    }
  }
  Term actual = infer(ctx, t);
  if (!reducer_.conv(actual, type)) convFail(ctx, t, type, actual);
}

void TypeChecker::walkPattern(const Term& pattern, std::vector<std::optional<Term>>& types) {
  const std::size_t n = types.size();
  std::vector<Term> args;
  Term head = spine(pattern, args);
  if (!head.is(TermKind::Const)) return;
  const ConstantInfo* c = theory_.find(head.name());
  if (!c) {
    throw DiagnosticError(ErrorCode::RuleIllTyped, "unknown constant '" + head.name() + "'");
  }
  Term type = c->type;
  for (const Term& a : args) {
    Term w = whnf(type);
    if (!w.is(TermKind::Pi)) {
      throw DiagnosticError(ErrorCode::RuleIllTyped,
                            "'" + head.name() + "' is applied to too many arguments");
    }
    if (a.is(TermKind::Var)) {
      std::size_t k = n - 1 - a.index();
      if (!types[k]) types[k] = w.domain();
    } else {
      walkPattern(a, types);
    }
    type = subst(w.codomain(), a);
  }
}

std::vector<Term> TypeChecker::inferRuleContext(const RewriteRule& rule) {
  const std::size_t n = rule.context.size();
  // Types here live in the scope of the whole rule context.
  std::vector<std::optional<Term>> full(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (rule.context[k].type) full[k] = shift(*rule.context[k].type, static_cast<std::int64_t>(n - k));
  }
  walkPattern(rule.lhs, full);
  std::vector<Term> out;
  for (std::size_t k = 0; k < n; ++k) {
    const std::string& name = rule.context[k].name;
    if (!full[k]) {
      throw DiagnosticError(ErrorCode::RuleContextInferenceFail,
                            "cannot infer the type of pattern variable '" + name + "'");
    }
    std::optional<Term> prefix = unshift(*full[k], static_cast<std::uint32_t>(n - k));
    if (!prefix) {
      throw DiagnosticError(ErrorCode::RuleContextInferenceFail,
                            "the type of pattern variable '" + name +
                                "' depends on a variable declared after it");
    }
    out.push_back(std::move(*prefix));
  }
  return out;
}

void TypeChecker::checkRule(const RewriteRule& rule) {
  std::vector<Term> types = inferRuleContext(rule);
  Context ctx;
  try {
    for (std::size_t k = 0; k < types.size(); ++k) {
      if (sortOf(ctx, types[k]) != Sort::Type) {
        throw DiagnosticError(ErrorCode::SortError,
                              "pattern variable '" + rule.context[k].name +
                                  "' must have a type of sort Type");
      }
      ctx.push(rule.context[k].name, types[k]);
    }
    Term lhsType = infer(ctx, rule.lhs);
    check(ctx, rule.rhs, lhsType);
  } catch (const DiagnosticError& e) {
    if (e.code() == ErrorCode::FuelExhausted) throw;
    std::vector<std::string> names;
    for (const RuleVar& v : rule.context) names.push_back(v.name);
    throw DiagnosticError(ErrorCode::RuleIllTyped, "rule for '" + print(rule.lhs, names) +
                                                       "' is ill-typed: " + e.diagnostic().message);
  }
}

Term infer(const Theory& th, const Context& ctx, const Term& t) {
  Context local = ctx;
  return TypeChecker(th).infer(local, t);
}

void check(const Theory& th, const Context& ctx, const Term& t, const Term& type) {
  Context local = ctx;
  TypeChecker(th).check(local, t, type);
}

void checkRule(const Theory& th, const RewriteRule& rule) { TypeChecker(th).checkRule(rule); }

Elaborator::Elaborator(std::string id, std::uint64_t fuel) : origin_(Origin::Framework), fuel_(fuel) {
  theory_.id_ = std::move(id);
}

Elaborator::Elaborator(const Theory& base, std::uint64_t fuel)
    : theory_(base), origin_(Origin::User), fuel_(fuel) {}

void Elaborator::add(const Declaration& d) {
  try {
    if (d.isRule()) {
      const auto& rule = std::get<RewriteRule>(d.value);
      CompiledRule compiled = compileRule(rule);
      TypeChecker(theory_, fuel_).checkRule(rule);
      theory_.rules_.add(std::move(compiled));
      theory_.ruleList_.push_back(rule);
      return;
    }
    const std::string& name = d.name();
    if (theory_.find(name)) {
      throw DiagnosticError(ErrorCode::DuplicateName, "'" + name + "' is already declared");
    }
    TypeChecker tc(theory_, fuel_);
    Context ctx;
    ConstantInfo info{name, {}, std::nullopt, origin_, d.span};
    if (auto* c = std::get_if<ConstDecl>(&d.value)) {
      tc.sortOf(ctx, c->type);
      info.type = c->type;
    } else {
      const auto& def = std::get<Definition>(d.value);
      tc.sortOf(ctx, def.type);
      tc.check(ctx, def.body, def.type);
      info.type = def.type;
      info.body = def.body;
      theory_.definitions_.emplace(name, def.body);
    }
    theory_.index_.emplace(name, theory_.entries_.size());
    theory_.entries_.push_back(std::move(info));
  } catch (const DiagnosticError& e) {
    throw e.withSpan(d.span);
  }
}

Theory elaborate(const std::vector<Declaration>& decls, std::string id, std::uint64_t fuel) {
  Elaborator el(std::move(id), fuel);
  for (const Declaration& d : decls) el.add(d);
  return std::move(el).freeze();
}

Theory extend(const Theory& base, const std::vector<Declaration>& decls, std::uint64_t fuel) {
  Elaborator el(base, fuel);
  for (const Declaration& d : decls) el.add(d);
  return std::move(el).freeze();
}

}  // namespace dkm
