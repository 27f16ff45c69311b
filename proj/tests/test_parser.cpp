#include <doctest.h>

#include "dkm/syntax.hpp"
#include "support/expect.hpp"

using namespace dkm;
using expect::codeOf;

namespace {

const NameSet kStt{"type", "eta", "o", "nat", "arrow", "eps", "imp", "all"};

Term c(const char* n) { return Term::constant(n); }
Term ap(Term f, Term a) { return Term::app(std::move(f), std::move(a)); }

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("constant declarations") {
  auto decls = parse("type : Type.\no : type.");
  REQUIRE(decls.size() == 2);
  const auto& t = std::get<ConstDecl>(decls[0].value);
  CHECK(t.name == "type");
  CHECK(alphaEq(t.type, Term::sort(Sort::Type)));
  const auto& o = std::get<ConstDecl>(decls[1].value);
  CHECK(o.name == "o");
  CHECK(alphaEq(o.type, c("type")));
  CHECK(decls[1].span.startLine == 2);
  CHECK(decls[1].span.startCol == 1);
}

TEST_CASE("empty and comment-only files") {
  CHECK(parse("").empty());
  CHECK(parse("  // nothing here\n\n").empty());
  CHECK(parse("\xEF\xBB\xBF// bom\n").empty());
}

TEST_CASE("first rule of the simple type theory") {
  auto decls = parse("[x,y] eta (arrow x y) --> eta x -> eta y.", "", kStt);
  REQUIRE(decls.size() == 1);
  const auto& r = std::get<RewriteRule>(decls[0].value);
  REQUIRE(r.context.size() == 2);
  CHECK(r.context[0].name == "x");
  CHECK(r.context[1].name == "y");
  CHECK_FALSE(r.context[0].type.has_value());
  // x is the outer context variable: index 1; y: index 0.
  CHECK(alphaEq(r.lhs, ap(c("eta"), ap(ap(c("arrow"), Term::var(1)), Term::var(0)))));
  CHECK(alphaEq(r.rhs, Term::pi("_", ap(c("eta"), Term::var(1)), ap(c("eta"), Term::var(1)))));
}

TEST_CASE("annotated rule context") {
  auto decls = parse("[x : eta o, y : eps x -> type] eta (pi x y) --> z : eps x -> eta (y z).", "",
                     NameSet{"type", "eta", "o", "eps", "pi"});
  const auto& r = std::get<RewriteRule>(decls[0].value);
  REQUIRE(r.context[1].type.has_value());
  CHECK(alphaEq(*r.context[1].type, Term::pi("_", ap(c("eps"), Term::var(0)), c("type"))));
  CHECK(alphaEq(r.rhs, Term::pi("z", ap(c("eps"), Term::var(1)), ap(c("eta"), ap(Term::var(1), Term::var(0))))));
}

TEST_CASE("dependent products and arrows") {
  Term t = parseTerm("X : eta o -> eps X -> eps X", kStt);
  CHECK(alphaEq(t, Term::pi("X", ap(c("eta"), c("o")),
                            Term::pi("_", ap(c("eps"), Term::var(0)), ap(c("eps"), Term::var(1))))));
  // Arrows associate to the right.
  Term a = parseTerm("type -> type -> type", kStt);
  CHECK(alphaEq(a, Term::arrow(c("type"), Term::arrow(c("type"), c("type")))));
  Term b = parseTerm("(type -> type) -> type", kStt);
  CHECK(alphaEq(b, Term::arrow(Term::arrow(c("type"), c("type")), c("type"))));
}

TEST_CASE("lambda and definitions") {
  auto decls = parse("def id : eps (all o (\\X : eta o => imp X X)) := \\X : eta o => \\a : eps X => a.",
                     "", kStt);
  REQUIRE(decls.size() == 1);
  CHECK(decls[0].isDefinition());
  const auto& d = std::get<Definition>(decls[0].value);
  CHECK(d.name == "id");
  CHECK(alphaEq(d.body, Term::lam("X", ap(c("eta"), c("o")),
                                  Term::lam("a", ap(c("eps"), Term::var(0)), Term::var(0)))));
}

TEST_CASE("later declarations see earlier names") {
  auto decls = parse("A : Type. a : A. def b : A := a.");
  CHECK(decls.size() == 3);
  CHECK(decls[2].name() == "b");
}

TEST_CASE("binders shadow constants") {
  Term t = parseTerm("\\o : type => o", kStt);
  CHECK(alphaEq(t, Term::lam("o", c("type"), Term::var(0))));
}

TEST_CASE("parse errors") {
  CHECK(codeOf([] { parse("o : Type"); }) == ErrorCode::Parse);
  CHECK(codeOf([] { parse("o type."); }) == ErrorCode::Parse);
  CHECK(codeOf([] { parse("k : Kind."); }) == ErrorCode::Parse);
  CHECK(codeOf([] { parse("def : Type."); }) == ErrorCode::Parse);
  CHECK(codeOf([] { parse("x : \xCE\xB7."); }) == ErrorCode::Parse);
  CHECK(codeOf([] { parse("[x] f x -> x.", "", NameSet{"f"}); }) == ErrorCode::Parse);
  CHECK(codeOf([] { parse("a : (Type."); }) == ErrorCode::Parse);
  CHECK(codeOf([] { parse("1a : Type."); }) == ErrorCode::Parse);
  CHECK(codeOf([] { parseTerm(std::string(5000, '(') + "Type" + std::string(5000, ')'), {}); }) ==
        ErrorCode::Parse);
}

TEST_CASE("parse error spans point at the offending token") {
  try {
    parse("o : type.\nnat : type\n", "f.dkm", NameSet{"type"});
    FAIL("expected an error");
  } catch (const DiagnosticError& e) {
    REQUIRE(e.diagnostic().span.has_value());
    CHECK(e.diagnostic().span->file == "f.dkm");
    CHECK(e.diagnostic().format().rfind("f.dkm:", 0) == 0);
  }
}

TEST_CASE("scope errors") {
  CHECK(codeOf([] { parse("o : type."); }) == ErrorCode::Scope);
  CHECK(codeOf([] { parseTerm("\\x : type => y", kStt); }) == ErrorCode::Scope);
  CHECK(codeOf([] { parse("[x] eta y --> x.", "", kStt); }) == ErrorCode::Scope);
  CHECK(codeOf([] { parse("[x, y] eta x --> x.", "", kStt); }) == ErrorCode::Scope);
  CHECK(codeOf([] { parse("[x, x] imp x x --> x.", "", kStt); }) == ErrorCode::Scope);
}

TEST_CASE("print examples") {
  CHECK(print(parse("o : type.", "", NameSet{"type"})[0]) == "o : type.");
  Term proof = parseTerm("\\X : eta o => \\a : eps X => a", kStt);
  CHECK(print(proof) == "\\X : eta o => \\a : eps X => a");
  Term sugar = Term::pi("z", ap(c("eta"), c("nat")), ap(c("eta"), c("o")));
  CHECK(print(sugar) == "eta nat -> eta o");
  CHECK(alphaEq(parseTerm(print(sugar), kStt), sugar));
  CHECK(print(parseTerm("X : eta o -> eps X -> eps X", kStt)) == "X : eta o -> eps X -> eps X");
  CHECK(print(parseTerm("(type -> type) -> type", kStt)) == "(type -> type) -> type");
  CHECK(print(parse("[x, y] eta (arrow x y) --> eta x -> eta y.", "", kStt)[0]) ==
        "[x, y] eta (arrow x y) --> eta x -> eta y.");
}

TEST_CASE("printer freshens clashing binder names") {
  // \x : A => \x : A => x1 x where the hints collide
  Term t = Term::lam("x", c("A"), Term::lam("x", c("A"), ap(Term::var(1), Term::var(0))));
  std::string s = print(t);
  CHECK(s == "\\x : A => \\x1 : A => x x1");
  CHECK(alphaEq(parseTerm(s, NameSet{"A"}), t));
  // A binder hint equal to a constant used in the body.
  Term u = Term::lam("o", c("type"), ap(c("o"), Term::var(0)));
  CHECK(alphaEq(parseTerm(print(u), kStt), u));
  // Reserved words are never used as names.
  Term v = Term::lam("Type", c("type"), Term::var(0));
  CHECK(alphaEq(parseTerm(print(v), kStt), v));
}

TEST_CASE("printFile preserves order") {
  auto decls = parse("A : Type. a : A. b : A.");
  auto again = parse(printFile(decls));
  REQUIRE(again.size() == 3);
  CHECK(again[0].name() == "A");
  CHECK(again[1].name() == "a");
  CHECK(again[2].name() == "b");
}

TEST_CASE("identifiers") {
  CHECK(isIdentifier("x_1"));
  CHECK_FALSE(isIdentifier("_x"));
  CHECK_FALSE(isIdentifier("1x"));
  CHECK_FALSE(isIdentifier(""));
  CHECK(isReservedWord("def"));
  CHECK(isReservedWord("Kind"));
}

}  // TEST_SUITE
