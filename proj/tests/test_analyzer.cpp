#include <doctest.h>

#include <map>

#include "dkm/analyzer.hpp"
#include "dkm/json_io.hpp"
#include "dkm/theories.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

using namespace dkm;
using expect::codeOf;

namespace {

const char* kIdentityCoc =
    "def identity : eps (all o (\\X : eta o => imp X (\\p : eps X => X))) := "
    "\\X : eta o => \\a : eps X => a.";

std::vector<Declaration> cocFile(const std::string& text) { return parse(text, "t.dkm", cocTheory().names()); }
std::vector<Declaration> sttFile(const std::string& text) { return parse(text, "t.dkm", sttTheory().names()); }
Term coc(const std::string& text) { return parseTerm(text, cocTheory().names()); }
Term stt(const std::string& text) { return parseTerm(text, sttTheory().names()); }

std::vector<oracle::Found> asFound(const std::vector<Violation>& vs) {
  std::vector<oracle::Found> out;
  for (const Violation& v : vs) out.push_back({std::string(violationName(v.kind)), v.position});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("analyzer") {

TEST_CASE("the CoC identity proof is in S") {
  auto decls = cocFile(kIdentityCoc);
  AnalysisReport r = analyze(cocTheory(), decls[0]);
  CHECK(r.subject == "identity");
  CHECK(r.theoryId == "coc");
  CHECK(r.inS);
  CHECK(r.violations.empty());
  CHECK(r.normalFormInS == std::optional<bool>(true));
  CHECK(r.ingredients.framework == std::set<std::string>{"all", "eps", "eta", "imp", "o"});
  CHECK(r.ingredients.axioms.empty());
  CHECK(r.ingredients.all() == freeConstants(std::get<Definition>(decls[0].value).type));
  // The oracle agrees.
  for (const auto& [part, t] : declarationParts(decls[0])) CHECK(oracle::violations(t).empty());
}

TEST_CASE("pi is reported") {
  auto decls = cocFile("P : eta o.\nc : eta (pi P (\\p : eps P => nat)).");
  auto reports = analyzeFile(cocTheory(), decls);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].inS);
  CHECK_FALSE(reports[1].inS);
  REQUIRE(reports[1].violations.size() == 1);
  CHECK(reports[1].violations[0].kind == ViolationKind::UsesPi);
  CHECK(reports[1].violations[0].part == "type");
  CHECK(reports[1].violations[0].position == Position{Selector::Arg});
}

TEST_CASE("a dependent implication is reported at its position") {
  // imp X (\p : eps X => imp (all o (\Y : eta o => Y)) X) does not use p; the
  // body below does, through a type family over proofs of X.
  auto decls = cocFile(
      "Q : eta o -> eta o.\n"
      "f : X : eta o -> eps X -> eta o.\n"
      "def dep : eta o := all o (\\X : eta o => imp X (\\p : eps X => f X p)).");
  auto reports = analyzeFile(cocTheory(), decls);
  const AnalysisReport& r = reports.at(2);
  CHECK_FALSE(r.inS);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].kind == ViolationKind::ImpDependent);
  CHECK(r.violations[0].part == "body");
  const Position expected{Selector::Arg, Selector::Body};
  CHECK(r.violations[0].position == expected);
  Term sub = *subtermAt(std::get<Definition>(decls[2].value).body, expected);
  CHECK(sub.fun().fun().isConst("imp"));
}

TEST_CASE("partial and dependent arrows") {
  CHECK(asFound(findViolations(coc("arrow nat"))) ==
        std::vector<oracle::Found>{{"ARROW_PARTIAL", {}}});
  CHECK(asFound(findViolations(coc("\\F : eta nat -> type => arrow nat F"))) ==
        std::vector<oracle::Found>{{"ARROW_PARTIAL", {Selector::Body}}});
  Term dep = coc("\\F : eta nat -> type => arrow nat (\\z : eta nat => F z)");
  CHECK(asFound(findViolations(dep)) == std::vector<oracle::Found>{{"ARROW_DEPENDENT", {Selector::Body}}});
  CHECK(asFound(findViolations(coc("imp"))) == std::vector<oracle::Found>{{"IMP_PARTIAL", {}}});
  for (const Term& t : {coc("arrow nat"), dep, coc("imp")}) {
    CHECK(asFound(findViolations(t)) == oracle::violations(t));
  }
}

TEST_CASE("analysis is stable under renaming") {
  Term a = coc("\\F : eta nat -> type => arrow nat (\\z : eta nat => F z)");
  Term b = coc("\\G : eta nat -> type => arrow nat (\\w : eta nat => G w)");
  CHECK(asFound(findViolations(a)) == asFound(findViolations(b)));
}

TEST_CASE("normal form verdict is reported separately") {
  // A beta-redex whose contractum drops the dependent arrow.
  auto decls = cocFile(
      "def k : type := (\\A : type => nat) (arrow nat (\\z : eta nat => arrow nat (\\w : eta nat => nat))).\n"
      "F : eta nat -> type.\n"
      "def j : type := (\\A : type => nat) (arrow nat (\\z : eta nat => F z)).");
  auto reports = analyzeFile(cocTheory(), decls);
  CHECK(reports[0].inS);
  CHECK_FALSE(reports[2].inS);
  CHECK(reports[2].normalFormInS == std::optional<bool>(true));
}

TEST_CASE("non-S dependencies are listed") {
  auto decls = cocFile(
      "F : eta nat -> type.\n"
      "def T : type := arrow nat (\\z : eta nat => F z).\n"
      "c : eta T.");
  auto reports = analyzeFile(cocTheory(), decls);
  CHECK(reports[2].inS);
  CHECK(reports[2].nonSDependencies == std::vector<std::string>{"T"});
}

TEST_CASE("rules are analyzed part by part") {
  auto decls = cocFile("f : eta o -> eta o.\n[x : eta o] f x --> imp x (\\h : eps x => x).");
  auto reports = analyzeFile(cocTheory(), decls);
  REQUIRE(reports.size() == 2);
  CHECK(reports[1].subject == "rule#1");
  CHECK(reports[1].inS);
  CHECK_FALSE(reports[1].normalFormInS.has_value());
}

TEST_CASE("ill-typed subjects") {
  auto decls = cocFile("def bad : eta nat := o.");
  CHECK(codeOf([&] { analyze(cocTheory(), decls[0]); }) == ErrorCode::IllTypedSubject);
  CHECK(codeOf([&] { analyzeFile(cocTheory(), decls); }) == ErrorCode::IllTypedSubject);
  CHECK(codeOf([&] { ingredientReport(cocTheory(), decls); }) == ErrorCode::IllTypedSubject);
  CHECK(codeOf([&] { translateFile(decls); }) == ErrorCode::IllTypedSubject);
}

TEST_CASE("eraseToSTT examples") {
  CHECK(alphaEq(eraseToSTT(coc("arrow nat (\\z : eta nat => nat)")), stt("arrow nat nat")));
  Term plain = coc("all o (\\X : eta o => X)");
  CHECK(alphaEq(eraseToSTT(plain), plain));
  CHECK(alphaEq(eraseToSTT(coc("eps (all o (\\X : eta o => imp X (\\p : eps X => X)))")),
                stt("eps (all o (\\X : eta o => imp X X))")));
  // Inside binder annotations, too.
  CHECK(alphaEq(eraseToSTT(coc("\\f : eta (arrow nat (\\z : eta nat => nat)) => f")),
                stt("\\f : eta (arrow nat nat) => f")));
  // Nested: the erased inner arrow lowers by one binder.
  CHECK(alphaEq(eraseToSTT(coc("arrow nat (\\z : eta nat => arrow nat (\\w : eta nat => nat))")),
                stt("arrow nat (arrow nat nat)")));
}

TEST_CASE("eraseToSTT rejects terms outside S") {
  CHECK(codeOf([] { eraseToSTT(coc("pi")); }) == ErrorCode::NotInS);
  CHECK(codeOf([] { eraseToSTT(coc("arrow nat")); }) == ErrorCode::NotInS);
  CHECK(codeOf([] { eraseToSTT(coc("\\F : eta nat -> type => arrow nat (\\z : eta nat => F z)")); }) ==
        ErrorCode::NotInS);
}

TEST_CASE("translateFile") {
  TranslationResult r = translateFile(cocFile(kIdentityCoc));
  REQUIRE(r.declarations.size() == 1);
  const auto& d = std::get<Definition>(r.declarations[0].value);
  CHECK(alphaEq(d.body, stt("\\X : eta o => \\a : eps X => a")));
  CHECK(alphaEq(d.type, stt("eps (all o (\\X : eta o => imp X X))")));
  CHECK(r.nameMapping == std::vector<std::pair<std::string, std::string>>{{"identity", "identity"}});
  CHECK_NOTHROW(extend(sttTheory(), r.declarations));
  CHECK(printFile(r.declarations) ==
        "def identity : eps (all o (\\X : eta o => imp X X)) := \\X : eta o => \\a : eps X => a.\n");

  TranslationResult empty = translateFile({});
  CHECK(empty.declarations.empty());
  CHECK(empty.reports.empty());
}

TEST_CASE("translateFile rejects non-S files with their reports") {
  try {
    translateFile(cocFile("P : eta o.\nc : eta (pi P (\\p : eps P => nat)).\nd : eta nat."));
    FAIL("expected NOT_IN_S");
  } catch (const NotInSError& e) {
    CHECK(e.code() == ErrorCode::NotInS);
    REQUIRE(e.reports().size() == 1);
    CHECK(e.reports()[0].subject == "c");
    CHECK(e.reports()[0].violations.at(0).kind == ViolationKind::UsesPi);
  }
}

TEST_CASE("a translation that fails to re-check is unsound") {
  // Re-checking the erased identity against the dependent theory must fail.
  CHECK(codeOf([] { translateFile(cocFile(kIdentityCoc), cocTheory(), cocTheory()); }) ==
        ErrorCode::TranslationUnsound);
}

TEST_CASE("ingredient reports") {
  auto decls = sttFile(
      "def F : eta o := all o (\\X : eta o => X).\n"
      "em : P : eta o -> eps (imp (imp (imp P F) F) P).\n"
      "def dne : P : eta o -> eps (imp (imp (imp P F) F) P) := em.\n"
      "c : eta o.\n"
      "def use : eps (imp (imp (imp c F) F) c) := dne c.\n"
      "def identity : eps (all o (\\X : eta o => imp X X)) := \\X : eta o => \\a : eps X => a.");
  auto report = ingredientReport(sttTheory(), decls);
  REQUIRE(report.size() == 6);
  std::map<std::string, IngredientSet> byName(report.begin(), report.end());

  CHECK(byName["dne"].axioms == std::set<std::string>{"em"});
  CHECK(byName["use"].axioms == std::set<std::string>{"em"});
  CHECK(byName["use"].library == std::set<std::string>{"F", "c", "dne"});
  CHECK(byName["identity"].axioms.empty());
  CHECK(byName["identity"].library.empty());
  CHECK(byName["identity"].framework == std::set<std::string>{"all", "eps", "eta", "imp", "o"});
  CHECK(byName["em"].axioms.empty());

  // Closure oracle: fixpoint over the definitions declared in the file.
  std::map<std::string, std::set<std::string>> direct;
  std::set<std::string> defs;
  for (const Declaration& d : decls) {
    for (const auto& part : declarationParts(d)) collectConstants(part.second, direct[d.name()]);
    if (d.isDefinition()) defs.insert(d.name());
  }
  for (const Declaration& d : decls) {
    std::set<std::string> total = direct[d.name()];
    for (bool grew = true; grew;) {
      grew = false;
      for (const std::string& n : std::set<std::string>(total)) {
        if (!defs.count(n) || n == d.name()) continue;
        for (const std::string& m : direct[n]) grew = total.insert(m).second || grew;
      }
    }
    CAPTURE(d.name());
    CHECK(byName[d.name()].all() == total);
  }
}

TEST_CASE("report JSON shape") {
  AnalysisReport r = analyze(cocTheory(), cocFile(kIdentityCoc)[0]);
  auto j = toJson(r);
  CHECK(j["subject"] == "identity");
  CHECK(j["inS"] == true);
  CHECK(j["violations"].empty());
  CHECK(j["ingredients"]["framework"].size() == 5);
  CHECK(j["normalFormInS"] == true);
  auto pi = analyzeFile(cocTheory(), cocFile("P : eta o.\nc : eta (pi P (\\p : eps P => nat)).")).at(1);
  auto jp = toJson(pi);
  CHECK(jp["violations"][0]["kind"] == "USES_PI");
  CHECK(jp["violations"][0]["path"] == nlohmann::json::array({"arg"}));
}

}  // TEST_SUITE
