#include <algorithm>

#include "dkm/syntax.hpp"

namespace dkm {
namespace {

bool constantOccurs(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case TermKind::Const: return t.name() == name;
    case TermKind::App:
    case TermKind::Lam:
    case TermKind::Pi: return constantOccurs(t.fun(), name) || constantOccurs(t.arg(), name);
    default: return false;
  }
}

class Printer {
 public:
  explicit Printer(std::vector<std::string> names) : names_(std::move(names)) {}

  void term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Lam: {
        std::string n = fresh(t.name(), t.body());
        out_ += "\\" + n + " : ";
        term(t.binderType());
        out_ += " => ";
        scoped(n, t.body());
        return;
      }
      case TermKind::Pi: {
        if (!occursBound(t.codomain())) {
          app(t.domain());
          out_ += " -> ";
          scoped("", t.codomain());
          return;
        }
        std::string n = fresh(t.name(), t.codomain());
        out_ += n + " : ";
        app(t.domain());
        out_ += " -> ";
        scoped(n, t.codomain());
        return;
      }
      default:
        app(t);
    }
  }

  std::string take() { return std::move(out_); }

 private:
  void scoped(const std::string& name, const Term& body) {
    names_.push_back(name);
    term(body);
    names_.pop_back();
  }

  void app(const Term& t) {
    if (!t.is(TermKind::App)) return atom(t);
    std::vector<Term> args;
    Term head = spine(t, args);
    atom(head);
    for (const Term& a : args) {
      out_ += ' ';
      atom(a);
    }
  }

  void atom(const Term& t) {
    switch (t.kind()) {
      case TermKind::Sort:
        out_ += t.sortName() == Sort::Type ? "Type" : "Kind";
        return;
      case TermKind::Var:
        if (t.index() < names_.size()) {
          out_ += names_[names_.size() - 1 - t.index()];
        } else {
          out_ += "#" + std::to_string(t.index() - names_.size());
        }
        return;
      case TermKind::Const:
        out_ += t.name();
        return;
      default:
        out_ += '(';
        term(t);
        out_ += ')';
    }
  }

  /// A binder name that neither shadows an enclosing binder nor hides a
  /// constant mentioned in the body.
  std::string fresh(const std::string& hint, const Term& body) const {
    std::string base = isIdentifier(hint) && !isReservedWord(hint) ? hint : "x";
    auto taken = [&](const std::string& n) {
      return isReservedWord(n) || std::find(names_.begin(), names_.end(), n) != names_.end() ||
             constantOccurs(body, n);
    };
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string n = base + std::to_string(i);
      if (!taken(n)) return n;
    }
  }

  std::vector<std::string> names_;
  std::string out_;
};

}  // namespace

std::string print(const Term& t, const std::vector<std::string>& context) {
  Printer p(context);
  p.term(t);
  return p.take();
}

std::string print(const Declaration& d) {
  if (auto* c = std::get_if<ConstDecl>(&d.value)) return c->name + " : " + print(c->type) + ".";
  if (auto* def = std::get_if<Definition>(&d.value)) {
    return "def " + def->name + " : " + print(def->type) + " := " + print(def->body) + ".";
  }
  const auto& r = std::get<RewriteRule>(d.value);
  std::vector<std::string> names;
  auto clashes = [&](const std::string& n) {
    if (isReservedWord(n) || std::find(names.begin(), names.end(), n) != names.end()) return true;
    if (constantOccurs(r.lhs, n) || constantOccurs(r.rhs, n)) return true;
    for (const RuleVar& v : r.context) {
      if (v.type && constantOccurs(*v.type, n)) return true;
    }
    return false;
  };
  std::string out = "[";
  for (std::size_t k = 0; k < r.context.size(); ++k) {
    const RuleVar& v = r.context[k];
    std::string base = isIdentifier(v.name) && !isReservedWord(v.name) ? v.name : "x";
    std::string n = base;
    for (int i = 1; clashes(n); ++i) n = base + std::to_string(i);
    if (k > 0) out += ", ";
    out += n;
    if (v.type) out += " : " + print(*v.type, names);
    names.push_back(n);
  }
  out += "] " + print(r.lhs, names) + " --> " + print(r.rhs, names) + ".";
  return out;
}

std::string printFile(const std::vector<Declaration>& decls) {
  std::string out;
  for (const Declaration& d : decls) {
    out += print(d);
    out += '\n';
  }
  return out;
}

}  // namespace dkm
