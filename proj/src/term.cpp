#include "dkm/term.hpp"

#include <algorithm>

namespace dkm {

Term Term::make(TermKind k, std::string name, Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  switch (k) {
    case TermKind::App:
      n->looseBound = std::max(a.looseBound(), b.looseBound());
      break;
    case TermKind::Lam:
    case TermKind::Pi: {
      std::uint32_t inner = b.looseBound();
      n->looseBound = std::max(a.looseBound(), inner > 0 ? inner - 1 : 0);
      break;
    }
    default:
      break;
  }
  n->first = std::move(a);
  n->second = std::move(b);
  return Term(std::move(n));
}

Term Term::sort(Sort s) {
  static const Term type = [] {
    auto n = std::make_shared<Node>();
    n->sort = Sort::Type;
    return Term(std::move(n));
  }();
  static const Term kind = [] {
    auto n = std::make_shared<Node>();
    n->sort = Sort::Kind;
    return Term(std::move(n));
  }();
  return s == Sort::Type ? type : kind;
}

Term Term::var(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->index = index;
  n->looseBound = index + 1;
  return Term(std::move(n));
}

Term Term::constant(std::string name) {
  return make(TermKind::Const, std::move(name), Term(), Term());
}

Term Term::app(Term fun, Term arg) {
  return make(TermKind::App, {}, std::move(fun), std::move(arg));
}

Term Term::app(Term fun, const std::vector<Term>& args) {
  for (const Term& a : args) fun = app(std::move(fun), a);
  return fun;
}

Term Term::lam(std::string hint, Term binderType, Term body) {
  return make(TermKind::Lam, std::move(hint), std::move(binderType), std::move(body));
}

Term Term::pi(std::string hint, Term domain, Term codomain) {
  return make(TermKind::Pi, std::move(hint), std::move(domain), std::move(codomain));
}

Term Term::arrow(Term domain, const Term& codomain) {
  return pi("_", std::move(domain), shift(codomain, 1));
}

bool alphaEq(const Term& t, const Term& u) {
  if (t.sameNode(u)) return true;
  if (t.kind() != u.kind() || t.looseBound() != u.looseBound()) return false;
  switch (t.kind()) {
    case TermKind::Sort: return t.sortName() == u.sortName();
    case TermKind::Var: return t.index() == u.index();
    case TermKind::Const: return t.name() == u.name();
    case TermKind::App:
    case TermKind::Lam:
    case TermKind::Pi:
      return alphaEq(t.fun(), u.fun()) && alphaEq(t.arg(), u.arg());
  }
  return false;
}

namespace {

Term shiftAt(const Term& t, std::int64_t amount, std::uint32_t cutoff) {
  if (t.looseBound() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Var:
      return Term::var(static_cast<std::uint32_t>(t.index() + amount));
    case TermKind::App:
      return Term::app(shiftAt(t.fun(), amount, cutoff), shiftAt(t.arg(), amount, cutoff));
    case TermKind::Lam:
      return Term::lam(t.name(), shiftAt(t.binderType(), amount, cutoff),
                       shiftAt(t.body(), amount, cutoff + 1));
    case TermKind::Pi:
      return Term::pi(t.name(), shiftAt(t.domain(), amount, cutoff),
                      shiftAt(t.codomain(), amount, cutoff + 1));
    default:
      return t;
  }
}

Term instantiateAt(const Term& t, const std::vector<Term>& values, std::uint32_t depth) {
  if (t.looseBound() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Var: {
      std::uint32_t i = t.index() - depth;
      if (i < values.size()) return shiftAt(values[i], depth, 0);
      return Term::var(t.index() - static_cast<std::uint32_t>(values.size()));
    }
    case TermKind::App:
      return Term::app(instantiateAt(t.fun(), values, depth),
                       instantiateAt(t.arg(), values, depth));
    case TermKind::Lam:
      return Term::lam(t.name(), instantiateAt(t.binderType(), values, depth),
                       instantiateAt(t.body(), values, depth + 1));
    case TermKind::Pi:
      return Term::pi(t.name(), instantiateAt(t.domain(), values, depth),
                      instantiateAt(t.codomain(), values, depth + 1));
    default:
      return t;
  }
}

bool hasFreeBelow(const Term& t, std::uint32_t amount, std::uint32_t depth) {
  if (t.looseBound() <= depth) return false;
  switch (t.kind()) {
    case TermKind::Var: return t.index() - depth < amount;
    case TermKind::App:
      return hasFreeBelow(t.fun(), amount, depth) || hasFreeBelow(t.arg(), amount, depth);
    case TermKind::Lam:
    case TermKind::Pi:
      return hasFreeBelow(t.fun(), amount, depth) || hasFreeBelow(t.arg(), amount, depth + 1);
    default:
      return false;
  }
}

}  // namespace

Term shift(const Term& t, std::int64_t amount, std::uint32_t cutoff) {
  if (amount == 0) return t;
  return shiftAt(t, amount, cutoff);
}

std::optional<Term> unshift(const Term& t, std::uint32_t amount) {
  if (amount == 0) return t;
  if (hasFreeBelow(t, amount, 0)) return std::nullopt;
  return shiftAt(t, -static_cast<std::int64_t>(amount), 0);
}

Term subst(const Term& body, const Term& value) { return instantiateAt(body, {value}, 0); }

Term instantiate(const Term& t, const std::vector<Term>& values) {
  if (values.empty()) return t;
  return instantiateAt(t, values, 0);
}

bool occursFree(const Term& t, std::uint32_t index) {
  if (t.looseBound() <= index) return false;
  switch (t.kind()) {
    case TermKind::Var: return t.index() == index;
    case TermKind::App: return occursFree(t.fun(), index) || occursFree(t.arg(), index);
    case TermKind::Lam:
    case TermKind::Pi: return occursFree(t.fun(), index) || occursFree(t.arg(), index + 1);
    default: return false;
  }
}

bool occursBound(const Term& body) { return occursFree(body, 0); }

void collectConstants(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Const: out.insert(t.name()); break;
    case TermKind::App:
    case TermKind::Lam:
    case TermKind::Pi:
      collectConstants(t.fun(), out);
      collectConstants(t.arg(), out);
      break;
    default: break;
  }
}

std::set<std::string> freeConstants(const Term& t) {
  std::set<std::string> out;
  collectConstants(t, out);
  return out;
}

Term spine(const Term& t, std::vector<Term>& args) {
  args.clear();
  Term head = t;
  while (head.is(TermKind::App)) {
    args.push_back(head.arg());
    head = head.fun();
  }
  std::reverse(args.begin(), args.end());
  return head;
}

std::size_t termSize(const Term& t) {
  switch (t.kind()) {
    case TermKind::App:
    case TermKind::Lam:
    case TermKind::Pi: return 1 + termSize(t.fun()) + termSize(t.arg());
    default: return 1;
  }
}

std::string_view selectorName(Selector s) {
  switch (s) {
    case Selector::Fun: return "fun";
    case Selector::Arg: return "arg";
    case Selector::BinderType: return "binderType";
    case Selector::Body: return "body";
    case Selector::Domain: return "domain";
    case Selector::Codomain: return "codomain";
  }
  return "?";
}

std::optional<Term> subtermAt(const Term& t, const Position& pos) {
  Term cur = t;
  for (Selector s : pos) {
    switch (s) {
      case Selector::Fun:
      case Selector::Arg:
        if (!cur.is(TermKind::App)) return std::nullopt;
        cur = s == Selector::Fun ? cur.fun() : cur.arg();
        break;
      case Selector::BinderType:
      case Selector::Body:
        if (!cur.is(TermKind::Lam)) return std::nullopt;
        cur = s == Selector::BinderType ? cur.binderType() : cur.body();
        break;
      case Selector::Domain:
      case Selector::Codomain:
        if (!cur.is(TermKind::Pi)) return std::nullopt;
        cur = s == Selector::Domain ? cur.domain() : cur.codomain();
        break;
    }
  }
  return cur;
}

}  // namespace dkm
