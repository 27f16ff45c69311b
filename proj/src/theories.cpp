#include "dkm/theories.hpp"

#include <memory>

#include "theory_sources.hpp"

namespace dkm {
namespace {

std::vector<GoldenExample> sttGolden() {
  return {
      {"identity", "\\X : eta o => \\a : eps X => a", "eps (all o (\\X : eta o => imp X X))",
       std::nullopt},
      {"nat_identity", "\\x : eta nat => x", "eta nat -> eta nat", std::nullopt},
      {"refl_prop", "all o (\\X : eta o => imp X X)", "eta o", std::nullopt},
      {"arrow_reduction", "eta (arrow nat nat)", std::nullopt, "eta nat -> eta nat"},
      {"all_reduction", "eps (all o (\\X : eta o => imp X X))", std::nullopt,
       "X : eta o -> eps X -> eps X"},
      {"nested_arrow_reduction", "eta (arrow nat (arrow nat nat))", std::nullopt,
       "eta nat -> eta nat -> eta nat"},
  };
}

std::vector<GoldenExample> cocGolden() {
  return {
      {"identity_coc", "\\X : eta o => \\a : eps X => a",
       "eps (all o (\\X : eta o => imp X (\\p : eps X => X)))", std::nullopt},
      {"nat_identity_coc", "\\x : eta nat => x", "eta (arrow nat (\\z : eta nat => nat))",
       std::nullopt},
      {"arrow_reduction_coc", "eta (arrow nat (\\z : eta nat => nat))", std::nullopt,
       "eta nat -> eta nat"},
      {"all_reduction_coc", "eps (all o (\\X : eta o => imp X (\\p : eps X => X)))",
       std::nullopt, "X : eta o -> eps X -> eps X"},
  };
}

std::unique_ptr<TheoryCatalogEntry> load(std::string id, std::string_view source,
                                         std::vector<GoldenExample> golden) {
  auto decls = parse(source, "theories/" + id + ".dkm");
  Theory th = elaborate(decls, id);
  return std::make_unique<TheoryCatalogEntry>(
      TheoryCatalogEntry{std::move(id), source, std::move(th), std::move(golden)});
}

}  // namespace

const std::vector<std::string>& builtinTheoryIds() {
  static const std::vector<std::string> ids{"stt", "coc"};
  return ids;
}

const TheoryCatalogEntry& catalogEntry(std::string_view id) {
  static const auto stt = load("stt", embedded::kSttSource, sttGolden());
  static const auto coc = load("coc", embedded::kCocSource, cocGolden());
  if (id == "stt") return *stt;
  if (id == "coc") return *coc;
  throw DiagnosticError(ErrorCode::UnknownTheory, "unknown theory '" + std::string(id) + "'");
}

std::string_view theorySource(std::string_view id) {
  if (id == "stt") return embedded::kSttSource;
  if (id == "coc") return embedded::kCocSource;
  throw DiagnosticError(ErrorCode::UnknownTheory, "unknown theory '" + std::string(id) + "'");
}

const Theory& theoryById(std::string_view id) { return catalogEntry(id).theory; }
const std::vector<GoldenExample>& goldenCorpus(std::string_view id) { return catalogEntry(id).golden; }
const Theory& sttTheory() { return theoryById("stt"); }
const Theory& cocTheory() { return theoryById("coc"); }

void verifyGolden(const Theory& th, const GoldenExample& g) {
  NameSet names = th.names();
  Term t = parseTerm(g.term, names);
  if (g.expectedType) {
    check(th, Context{}, t, parseTerm(*g.expectedType, names));
  }
  if (g.expectedNf) {
    Term expected = parseTerm(*g.expectedNf, names);
    Term actual = nf(th.rules(), th.definitions(), t);
    if (!alphaEq(actual, expected)) {
      throw DiagnosticError(ErrorCode::ConvFail, "golden '" + g.name + "' normalizes to '" +
                                                     print(actual) + "', expected '" +
                                                     *g.expectedNf + "'");
    }
  }
}

}  // namespace dkm
