#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dkm/typechecker.hpp"

namespace dkm {

/// A worked example shipped with a theory. Either `expectedType` (the term
/// must check against it) or `expectedNf` (the term normalizes to it) is set.
struct GoldenExample {
  std::string name;
  std::string term;
  std::optional<std::string> expectedType;
  std::optional<std::string> expectedNf;
};

struct TheoryCatalogEntry {
  std::string id;
  std::string_view source;
  Theory theory;
  std::vector<GoldenExample> golden;
};

/// Ids of the built-in theories: "stt" and "coc".
const std::vector<std::string>& builtinTheoryIds();

/// Throws UNKNOWN_THEORY.
const TheoryCatalogEntry& catalogEntry(std::string_view id);
std::string_view theorySource(std::string_view id);
const Theory& theoryById(std::string_view id);
const std::vector<GoldenExample>& goldenCorpus(std::string_view id);

const Theory& sttTheory();
const Theory& cocTheory();

/// Checks one golden example against its theory; throws DiagnosticError on failure.
void verifyGolden(const Theory& th, const GoldenExample& g);

}  // namespace dkm
