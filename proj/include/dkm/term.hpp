#pragma once

// Terms of the lambda-Pi calculus modulo rewriting.
//
// Bound variables are de Bruijn indices counted from the innermost binder.
// Binder names are display hints only: no algorithm looks at them.
// Terms are immutable and share structure, so copies are cheap and may be
// passed between threads freely.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dkm {

enum class Sort : std::uint8_t { Type, Kind };

enum class TermKind : std::uint8_t { Sort, Var, Const, App, Lam, Pi };

class Term {
 public:
  /// A default-constructed Term is empty; only assignment and `bool` are valid on it.
  Term() = default;
  explicit operator bool() const { return node_ != nullptr; }

  static Term sort(Sort s);
  static Term var(std::uint32_t index);
  static Term constant(std::string name);
  static Term app(Term fun, Term arg);
  static Term app(Term fun, const std::vector<Term>& args);
  static Term lam(std::string hint, Term binderType, Term body);
  static Term pi(std::string hint, Term domain, Term codomain);
  /// Non-dependent product; `codomain` lives in the outer context.
  static Term arrow(Term domain, const Term& codomain);

  TermKind kind() const;
  bool is(TermKind k) const;
  bool isConst(std::string_view name) const;

  Sort sortName() const;
  std::uint32_t index() const;
  /// Constant name, or binder hint for Lam/Pi.
  const std::string& name() const;

  const Term& fun() const;
  const Term& arg() const;
  const Term& binderType() const;
  const Term& body() const;
  const Term& domain() const;
  const Term& codomain() const;

  /// 1 + the largest free de Bruijn index, 0 for closed terms.
  std::uint32_t looseBound() const;
  bool isClosed() const;

  bool sameNode(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(TermKind k, std::string name, Term a, Term b);

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind = TermKind::Sort;
  Sort sort = Sort::Type;
  std::uint32_t index = 0;
  std::uint32_t looseBound = 0;
  std::string name;
  Term first;
  Term second;
};

inline TermKind Term::kind() const { return node_->kind; }
inline bool Term::is(TermKind k) const { return node_->kind == k; }
inline bool Term::isConst(std::string_view name) const {
  return node_->kind == TermKind::Const && node_->name == name;
}
inline Sort Term::sortName() const { return node_->sort; }
inline std::uint32_t Term::index() const { return node_->index; }
inline const std::string& Term::name() const { return node_->name; }
inline const Term& Term::fun() const { return node_->first; }
inline const Term& Term::arg() const { return node_->second; }
inline const Term& Term::binderType() const { return node_->first; }
inline const Term& Term::body() const { return node_->second; }
inline const Term& Term::domain() const { return node_->first; }
inline const Term& Term::codomain() const { return node_->second; }
inline std::uint32_t Term::looseBound() const { return node_->looseBound; }
inline bool Term::isClosed() const { return node_->looseBound == 0; }

/// Syntactic equality up to binder hints.
bool alphaEq(const Term& t, const Term& u);

/// Adds `amount` to every free index >= `cutoff`.
Term shift(const Term& t, std::int64_t amount, std::uint32_t cutoff = 0);

/// Lowers free indices by `amount`; nullopt if an index below `amount` occurs free.
std::optional<Term> unshift(const Term& t, std::uint32_t amount);

/// Instantiates the outermost-bound variable of a binder body with `value`.
/// `value` lives in the context surrounding the binder.
Term subst(const Term& body, const Term& value);

/// Simultaneous instantiation: index i (below values.size()) becomes values[i],
/// higher indices are lowered by values.size(). Values live in the outer context.
Term instantiate(const Term& t, const std::vector<Term>& values);

/// Does index 0 occur in a binder body?
bool occursBound(const Term& body);
bool occursFree(const Term& t, std::uint32_t index);

std::set<std::string> freeConstants(const Term& t);
void collectConstants(const Term& t, std::set<std::string>& out);

/// Splits `f a1 ... an` into f and [a1..an].
Term spine(const Term& t, std::vector<Term>& args);

std::size_t termSize(const Term& t);

enum class Selector : std::uint8_t { Fun, Arg, BinderType, Body, Domain, Codomain };

using Position = std::vector<Selector>;

std::string_view selectorName(Selector s);

/// The subterm at a position; nullopt if the path does not fit the term.
std::optional<Term> subtermAt(const Term& t, const Position& pos);

}  // namespace dkm
