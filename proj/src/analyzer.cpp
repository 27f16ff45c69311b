#include "dkm/analyzer.hpp"

#include <functional>
#include <map>

#include "dkm/theories.hpp"

namespace dkm {

std::string_view violationName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ArrowDependent: return "ARROW_DEPENDENT";
    case ViolationKind::ImpDependent: return "IMP_DEPENDENT";
    case ViolationKind::UsesPi: return "USES_PI";
    case ViolationKind::ArrowPartial: return "ARROW_PARTIAL";
    case ViolationKind::ImpPartial: return "IMP_PARTIAL";
  }
  return "?";
}

std::set<std::string> IngredientSet::all() const {
  std::set<std::string> out = framework;
  out.insert(library.begin(), library.end());
  out.insert(axioms.begin(), axioms.end());
  return out;
}

namespace {

constexpr std::string_view kArrow = "arrow";
constexpr std::string_view kImp = "imp";
constexpr std::string_view kPi = "pi";

void walk(const Term& t, Position& pos, const std::string& part, std::vector<Violation>& out) {
  switch (t.kind()) {
    case TermKind::Lam:
    case TermKind::Pi: {
      bool lam = t.is(TermKind::Lam);
      pos.push_back(lam ? Selector::BinderType : Selector::Domain);
      walk(t.fun(), pos, part, out);
      pos.back() = lam ? Selector::Body : Selector::Codomain;
      walk(t.arg(), pos, part, out);
      pos.pop_back();
      return;
    }
    case TermKind::App:
    case TermKind::Const: {
      std::vector<Term> args;
      Term head = spine(t, args);
      if (head.isConst(kPi)) out.push_back({ViolationKind::UsesPi, part, pos});
      bool arrow = head.isConst(kArrow);
      if (arrow || head.isConst(kImp)) {
        if (args.size() < 2 || !args[1].is(TermKind::Lam)) {
          out.push_back({arrow ? ViolationKind::ArrowPartial : ViolationKind::ImpPartial, part, pos});
        } else if (occursBound(args[1].body())) {
          out.push_back(
              {arrow ? ViolationKind::ArrowDependent : ViolationKind::ImpDependent, part, pos});
        }
      }
      const std::size_t n = args.size();
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t depth = pos.size();
        pos.insert(pos.end(), n - 1 - k, Selector::Fun);
        pos.push_back(Selector::Arg);
        walk(args[k], pos, part, out);
        pos.resize(depth);
      }
      if (head.is(TermKind::Lam) || head.is(TermKind::Pi)) {
        std::size_t depth = pos.size();
        pos.insert(pos.end(), n, Selector::Fun);
        walk(head, pos, part, out);
        pos.resize(depth);
      }
      return;
    }
    default:
      return;
  }
}

bool isProofTyped(const Theory& th, const ConstantInfo& c) {
  if (c.isDefinition()) return false;
  Reducer r(th.rules(), th.definitions());
  try {
    Term t = r.whnf(c.type);
    while (t.is(TermKind::Pi)) t = r.whnf(t.codomain());
    std::vector<Term> args;
    return spine(t, args).isConst("eps");
  } catch (const DiagnosticError&) {
    return false;
  }
}

DiagnosticError illTyped(const DiagnosticError& e, const std::string& subject) {
  Diagnostic d = e.diagnostic();
  d.message = "'" + subject + "' does not elaborate: " + std::string(codeName(d.code)) + ": " +
              d.message;
  d.code = ErrorCode::IllTypedSubject;
  return DiagnosticError(std::move(d));
}

/// Throws ILL_TYPED_SUBJECT unless `d` is part of `th` or elaborates on top of it.
void ensureElaborated(const Theory& th, const Declaration& d, const std::string& name) {
  try {
    if (d.isRule()) {
      const auto& rule = std::get<RewriteRule>(d.value);
      compileRule(rule);
      checkRule(th, rule);
      return;
    }
    if (const ConstantInfo* c = th.find(d.name())) {
      bool same = alphaEq(c->type, declarationParts(d).front().second);
      if (auto* def = std::get_if<Definition>(&d.value)) {
        same = same && c->body && alphaEq(*c->body, def->body);
      } else {
        same = same && !c->body;
      }
      if (same) return;
      throw DiagnosticError(ErrorCode::DuplicateName,
                            "'" + d.name() + "' is already declared differently", d.span);
    }
    Elaborator el(th);
    el.add(d);
  } catch (const DiagnosticError& e) {
    throw illTyped(e.withSpan(d.span), name);
  }
}

/// User declarations reachable from `names` through definition bodies, with
/// their own violations checked.
std::vector<std::string> nonSDependencies(const Theory& th, const std::set<std::string>& names,
                                          const std::string& self) {
  std::set<std::string> seen;
  std::vector<std::string> stack(names.begin(), names.end());
  std::set<std::string> bad;
  while (!stack.empty()) {
    std::string n = stack.back();
    stack.pop_back();
    if (n == self || !seen.insert(n).second) continue;
    const ConstantInfo* c = th.find(n);
    if (!c || c->origin != Origin::User) continue;
    bool clean = findViolations(c->type).empty() && (!c->body || findViolations(*c->body).empty());
    if (!clean) bad.insert(n);
    if (c->body) {
      for (const std::string& m : freeConstants(*c->body)) stack.push_back(m);
      for (const std::string& m : freeConstants(c->type)) stack.push_back(m);
    }
  }
  return {bad.begin(), bad.end()};
}

AnalysisReport analyzeElaborated(const Theory& th, const Declaration& d, const std::string& name) {
  AnalysisReport rep;
  rep.subject = name;
  rep.theoryId = th.id();
  std::set<std::string> mentioned;
  for (const auto& [part, term] : declarationParts(d)) {
    auto v = findViolations(term, part);
    rep.violations.insert(rep.violations.end(), v.begin(), v.end());
    collectConstants(term, mentioned);
  }
  rep.inS = rep.violations.empty();
  rep.ingredients = classify(th, mentioned);
  rep.nonSDependencies = nonSDependencies(th, mentioned, name);
  if (!d.isRule()) {
    try {
      Reducer r(th.rules(), th.definitions());
      bool nfClean = true;
      for (const auto& [part, term] : declarationParts(d)) {
        r.refuel();
        nfClean = nfClean && findViolations(r.nf(term), part).empty();
      }
      rep.normalFormInS = nfClean;
    } catch (const DiagnosticError&) {
      rep.normalFormInS.reset();
    }
  }
  return rep;
}

}  // namespace

std::vector<Violation> findViolations(const Term& t, const std::string& part) {
  std::vector<Violation> out;
  Position pos;
  walk(t, pos, part, out);
  return out;
}

std::string subjectName(const Declaration& d, std::size_t ruleOrdinal) {
  if (d.isRule()) return "rule#" + std::to_string(ruleOrdinal);
  return d.name();
}

std::vector<std::pair<std::string, Term>> declarationParts(const Declaration& d) {
  std::vector<std::pair<std::string, Term>> out;
  if (auto* c = std::get_if<ConstDecl>(&d.value)) {
    out.emplace_back("type", c->type);
  } else if (auto* def = std::get_if<Definition>(&d.value)) {
    out.emplace_back("type", def->type);
    out.emplace_back("body", def->body);
  } else {
    const auto& r = std::get<RewriteRule>(d.value);
    for (std::size_t k = 0; k < r.context.size(); ++k) {
      if (r.context[k].type) out.emplace_back("context." + std::to_string(k), *r.context[k].type);
    }
    out.emplace_back("lhs", r.lhs);
    out.emplace_back("rhs", r.rhs);
  }
  return out;
}

IngredientSet classify(const Theory& th, const std::set<std::string>& names) {
  IngredientSet out;
  for (const std::string& n : names) {
    const ConstantInfo* c = th.find(n);
    if (!c || c->origin == Origin::Framework) {
      out.framework.insert(n);
    } else if (isProofTyped(th, *c)) {
      out.axioms.insert(n);
    } else {
      out.library.insert(n);
    }
  }
  return out;
}

AnalysisReport analyze(const Theory& th, const Declaration& subject) {
  std::string name = subjectName(subject, 1);
  ensureElaborated(th, subject, name);
  if (!subject.isRule() && !th.find(subject.name())) {
    Elaborator el(th);
    el.add(subject);
    Theory extended = std::move(el).freeze();
    return analyzeElaborated(extended, subject, name);
  }
  return analyzeElaborated(th, subject, name);
}

namespace {

Theory elaborateSubjects(const Theory& base, const std::vector<Declaration>& decls) {
  Elaborator el(base);
  std::size_t rules = 0;
  for (const Declaration& d : decls) {
    if (d.isRule()) ++rules;
    try {
      el.add(d);
    } catch (const DiagnosticError& e) {
      throw illTyped(e, subjectName(d, rules));
    }
  }
  return std::move(el).freeze();
}

}  // namespace

std::vector<AnalysisReport> analyzeFile(const Theory& base, const std::vector<Declaration>& decls) {
  Theory th = elaborateSubjects(base, decls);
  std::vector<AnalysisReport> out;
  std::size_t rules = 0;
  for (const Declaration& d : decls) {
    if (d.isRule()) ++rules;
    out.push_back(analyzeElaborated(th, d, subjectName(d, rules)));
  }
  return out;
}

Term eraseToSTT(const Term& t) {
  switch (t.kind()) {
    case TermKind::Lam:
      return Term::lam(t.name(), eraseToSTT(t.binderType()), eraseToSTT(t.body()));
    case TermKind::Pi:
      return Term::pi(t.name(), eraseToSTT(t.domain()), eraseToSTT(t.codomain()));
    case TermKind::App:
    case TermKind::Const: {
      std::vector<Term> args;
      Term head = spine(t, args);
      if (head.isConst(kPi)) {
        throw DiagnosticError(ErrorCode::NotInS, "term uses 'pi': " + print(t));
      }
      if (head.isConst(kArrow) || head.isConst(kImp)) {
        if (args.size() < 2) {
          throw DiagnosticError(ErrorCode::NotInS,
                                "'" + head.name() + "' is not applied to two arguments: " + print(t));
        }
        if (args[1].is(TermKind::Lam)) {
          std::optional<Term> lowered = unshift(args[1].body(), 1);
          if (!lowered) {
            throw DiagnosticError(ErrorCode::NotInS,
                                  "'" + head.name() + "' is used dependently: " + print(t));
          }
          args[1] = *lowered;
        }
        // A non-lambda second argument is taken to be already erased.
      } else if (head.is(TermKind::Lam) || head.is(TermKind::Pi)) {
        head = eraseToSTT(head);
      }
      for (Term& a : args) a = eraseToSTT(a);
      return Term::app(head, args);
    }
    default:
      return t;
  }
}

Declaration eraseToSTT(const Declaration& d) {
  Declaration out = d;
  if (auto* c = std::get_if<ConstDecl>(&out.value)) {
    c->type = eraseToSTT(c->type);
  } else if (auto* def = std::get_if<Definition>(&out.value)) {
    def->type = eraseToSTT(def->type);
    def->body = eraseToSTT(def->body);
  } else {
    auto& r = std::get<RewriteRule>(out.value);
    for (RuleVar& v : r.context) {
      if (v.type) v.type = eraseToSTT(*v.type);
    }
    r.lhs = eraseToSTT(r.lhs);
    r.rhs = eraseToSTT(r.rhs);
  }
  return out;
}

NotInSError::NotInSError(std::string message, std::vector<AnalysisReport> reports)
    : DiagnosticError(ErrorCode::NotInS, std::move(message)), reports_(std::move(reports)) {}

TranslationResult translateFile(const std::vector<Declaration>& cocDecls) {
  return translateFile(cocDecls, cocTheory(), sttTheory());
}

TranslationResult translateFile(const std::vector<Declaration>& cocDecls, const Theory& cocBase,
                                const Theory& sttBase) {
  TranslationResult result;
  result.reports = analyzeFile(cocBase, cocDecls);
  std::vector<AnalysisReport> offending;
  for (const AnalysisReport& r : result.reports) {
    if (!r.inS) offending.push_back(r);
  }
  if (!offending.empty()) {
    std::string names;
    for (const AnalysisReport& r : offending) names += (names.empty() ? "" : ", ") + r.subject;
    throw NotInSError("not in the translatable subset: " + names, std::move(offending));
  }
  for (const Declaration& d : cocDecls) {
    result.declarations.push_back(eraseToSTT(d));
    if (!d.isRule()) result.nameMapping.emplace_back(d.name(), d.name());
  }
  try {
    extend(sttBase, result.declarations);
  } catch (const DiagnosticError& e) {
    throw DiagnosticError(ErrorCode::TranslationUnsound,
                          "translated declarations do not check: " + std::string(e.what()));
  }
  return result;
}

std::vector<std::pair<std::string, IngredientSet>> ingredientReport(
    const Theory& base, const std::vector<Declaration>& decls) {
  Theory th = elaborateSubjects(base, decls);
  std::map<std::string, std::set<std::string>> memo;
  std::function<const std::set<std::string>&(const ConstantInfo&)> closure =
      [&](const ConstantInfo& c) -> const std::set<std::string>& {
    if (auto it = memo.find(c.name); it != memo.end()) return it->second;
    std::set<std::string> s = freeConstants(c.type);
    if (c.body) collectConstants(*c.body, s);
    std::set<std::string> direct = s;
    for (const std::string& n : direct) {
      const ConstantInfo* dep = th.find(n);
      if (dep && dep->isDefinition() && dep->origin == Origin::User && n != c.name) {
        const auto& sub = closure(*dep);
        s.insert(sub.begin(), sub.end());
      }
    }
    return memo.emplace(c.name, std::move(s)).first->second;
  };

  std::vector<std::pair<std::string, IngredientSet>> out;
  std::size_t rules = 0;
  for (const Declaration& d : decls) {
    if (d.isRule()) ++rules;
    std::set<std::string> mentioned;
    for (const auto& part : declarationParts(d)) collectConstants(part.second, mentioned);
    std::set<std::string> total = mentioned;
    for (const std::string& n : mentioned) {
      const ConstantInfo* dep = th.find(n);
      if (dep && dep->isDefinition() && dep->origin == Origin::User && n != d.name()) {
        const auto& sub = closure(*dep);
        total.insert(sub.begin(), sub.end());
      }
    }
    out.emplace_back(subjectName(d, rules), classify(th, total));
  }
  return out;
}

}  // namespace dkm
