#pragma once

// Synthetic lemma library over the simple type theory: propositional lemmas
// "forall X1..Xn, H1 => ... => Hm => Hg" proved by picking a hypothesis, and
// instances of earlier lemmas applied to compound propositions.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dkm/syntax.hpp"

namespace libgen {

using dkm::Term;

struct Library {
  std::string source;
  std::size_t lemmas = 0;
};

namespace detail {

inline Term c(const char* n) { return Term::constant(n); }
inline Term imp(Term a, Term b) { return Term::app(Term::app(c("imp"), std::move(a)), std::move(b)); }
inline Term etaO() { return Term::app(c("eta"), c("o")); }
inline Term eps(Term p) { return Term::app(c("eps"), std::move(p)); }

struct Lemma {
  std::string name;
  std::uint32_t vars;
  Term statement;  // quantifier-free, in the scope of `vars` propositional variables
};

class Builder {
 public:
  explicit Builder(std::uint32_t seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Term prop(std::uint32_t vars, int depth) {
    if (depth <= 0 || pick(3) == 0) return Term::var(static_cast<std::uint32_t>(pick(static_cast<int>(vars))));
    return imp(prop(vars, depth - 1), prop(vars, depth - 1));
  }

  static Term quantify(std::uint32_t vars, Term body) {
    for (std::uint32_t i = vars; i-- > 0;) {
      body = Term::app(Term::app(c("all"), c("o")), Term::lam("X" + std::to_string(i + 1), etaO(), body));
    }
    return body;
  }

  static Term abstractVars(std::uint32_t vars, Term body) {
    for (std::uint32_t i = vars; i-- > 0;) body = Term::lam("X" + std::to_string(i + 1), etaO(), body);
    return body;
  }

  dkm::Declaration lemma(const std::string& name, std::vector<Lemma>& done) {
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(pick(6));
    const int m = 6 + pick(8);
    std::vector<Term> hyps;
    for (int j = 0; j < m; ++j) hyps.push_back(prop(n, 4));
    const int g = pick(m);
    Term statement = hyps[g];
    for (int j = m; j-- > 0;) statement = imp(hyps[j], statement);

    Term proof = Term::var(static_cast<std::uint32_t>(m - 1 - g));
    for (int j = m; j-- > 0;) {
      proof = Term::lam("h" + std::to_string(j + 1), eps(dkm::shift(hyps[j], j)), proof);
    }
    proof = abstractVars(n, proof);
    done.push_back({name, n, statement});
    return {dkm::Definition{name, eps(quantify(n, statement)), proof}, {}};
  }

  dkm::Declaration instance(const std::string& name, const Lemma& of) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(pick(3));
    std::vector<Term> values(of.vars);
    for (Term& v : values) v = prop(n, 2);
    // values[i] replaces index i of the lemma statement, i.e. its (vars - i)-th variable.
    Term statement = dkm::instantiate(of.statement, values);
    std::vector<Term> args(values.rbegin(), values.rend());
    Term proof = abstractVars(n, Term::app(c(of.name.c_str()), args));
    return {dkm::Definition{name, eps(quantify(n, statement)), proof}, {}};
  }

 private:
  std::mt19937 rng_;
};

}  // namespace detail

/// `count` lemmas; every fifth one instantiates an earlier lemma.
inline Library generate(std::size_t count, std::uint32_t seed = 20240611) {
  detail::Builder b(seed);
  std::vector<detail::Lemma> done;
  Library lib;
  lib.source = "// generated lemma library\n";
  for (std::size_t k = 0; k < count; ++k) {
    const std::string name = "lemma" + std::to_string(k);
    dkm::Declaration d = (k % 5 == 4 && !done.empty())
                             ? b.instance(name, done[b.pick(static_cast<int>(done.size()))])
                             : b.lemma(name, done);
    lib.source += dkm::print(d);
    lib.source += '\n';
    ++lib.lemmas;
  }
  return lib;
}

}  // namespace libgen
