#include "dkm/json_io.hpp"

namespace dkm {

using nlohmann::json;

json toJson(const SourceSpan& span) {
  return json{{"file", span.file},
              {"startLine", span.startLine},
              {"startCol", span.startCol},
              {"endLine", span.endLine},
              {"endCol", span.endCol}};
}

json toJson(const Diagnostic& d) {
  json j{{"code", std::string(codeName(d.code))}, {"message", d.message}};
  if (d.span) j["span"] = toJson(*d.span);
  return j;
}

json toJson(const Position& pos) {
  json j = json::array();
  for (Selector s : pos) j.push_back(std::string(selectorName(s)));
  return j;
}

json toJson(const IngredientSet& ingredients) {
  return json{{"framework", ingredients.framework},
              {"library", ingredients.library},
              {"axioms", ingredients.axioms}};
}

json toJson(const AnalysisReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations) {
    violations.push_back(json{{"kind", std::string(violationName(v.kind))},
                              {"part", v.part},
                              {"path", toJson(v.position)}});
  }
  json j{{"subject", report.subject},
         {"theory", report.theoryId},
         {"inS", report.inS},
         {"violations", std::move(violations)},
         {"ingredients", toJson(report.ingredients)},
         {"nonSDependencies", report.nonSDependencies}};
  j["normalFormInS"] = report.normalFormInS ? json(*report.normalFormInS) : json(nullptr);
  return j;
}

}  // namespace dkm
