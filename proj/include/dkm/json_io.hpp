#pragma once

// JSON shapes shared by the command-line tool and the schemas under schemas/.

#include <json.hpp>

#include "dkm/analyzer.hpp"
#include "dkm/diagnostic.hpp"

namespace dkm {

nlohmann::json toJson(const SourceSpan& span);
nlohmann::json toJson(const Diagnostic& d);
nlohmann::json toJson(const Position& pos);
nlohmann::json toJson(const IngredientSet& ingredients);

/// {subject, theory, inS, normalFormInS, violations:[{kind, part, path}],
///  ingredients:{framework, library, axioms}, nonSDependencies}
nlohmann::json toJson(const AnalysisReport& report);

}  // namespace dkm
