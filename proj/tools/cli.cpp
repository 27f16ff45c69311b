#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "dkm/analyzer.hpp"
#include "dkm/json_io.hpp"
#include "dkm/theories.hpp"

namespace dkm::cli {
namespace {

using nlohmann::json;

/// Usage and I/O problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedTheory {
  std::optional<Theory> owned;
  const Theory* theory = nullptr;
  bool builtin = false;

  const Theory& get() const { return *theory; }
};

LoadedTheory loadTheory(const std::string& selector, std::uint64_t fuel) {
  LoadedTheory lt;
  if (selector == "stt" || selector == "coc") {
    lt.theory = &theoryById(selector);
    lt.builtin = true;
    return lt;
  }
  std::string text = readFile(selector);
  std::string id = std::filesystem::path(selector).stem().string();
  lt.owned = elaborate(parse(text, selector), id, fuel);
  lt.theory = &*lt.owned;
  return lt;
}

/// Parses every input in order; later files see the names of earlier ones.
std::vector<Declaration> parseInputs(const Theory& th, const std::vector<std::string>& inputs) {
  NameSet known = th.names();
  std::vector<Declaration> all;
  for (const std::string& path : inputs) {
    std::string text = readFile(path);
    auto decls = parse(text, path, known);
    for (Declaration& d : decls) {
      if (!d.isRule()) known.insert(d.name());
      all.push_back(std::move(d));
    }
  }
  return all;
}

void reportDiagnostic(const Invocation& inv, std::ostream& err, const Diagnostic& d) {
  if (inv.json) {
    err << toJson(d).dump() << '\n';
  } else {
    err << d.format() << '\n';
  }
}

std::string joined(const std::set<std::string>& names) {
  std::string out;
  for (const std::string& n : names) out += (out.empty() ? "" : ", ") + n;
  return out.empty() ? "-" : out;
}

std::string pathText(const Violation& v) {
  std::string out = v.part;
  for (Selector s : v.position) out += "." + std::string(selectorName(s));
  return out;
}

void printReport(std::ostream& out, const AnalysisReport& r) {
  out << r.subject << ": " << (r.inS ? "in S" : "not in S");
  if (r.normalFormInS && *r.normalFormInS != r.inS) {
    out << " (normal form: " << (*r.normalFormInS ? "in S" : "not in S") << ")";
  }
  out << '\n';
  for (const Violation& v : r.violations) {
    out << "  " << violationName(v.kind) << " at " << pathText(v) << '\n';
  }
  for (const std::string& dep : r.nonSDependencies) out << "  uses non-S declaration " << dep << '\n';
}

struct CheckRecord {
  std::string subject;
  std::string file;
  std::optional<Diagnostic> diagnostic;
};

/// Elaborates one unit on top of `th`, stopping at the first error.
std::vector<CheckRecord> checkUnit(const Theory& th, const std::vector<std::string>& inputs,
                                   std::uint64_t fuel) {
  std::vector<CheckRecord> records;
  std::vector<Declaration> decls;
  try {
    decls = parseInputs(th, inputs);
  } catch (const DiagnosticError& e) {
    const auto& span = e.diagnostic().span;
    records.push_back({"", span ? span->file : "", e.diagnostic()});
    return records;
  }
  Elaborator el(th, fuel);
  std::size_t rules = 0;
  for (const Declaration& d : decls) {
    if (d.isRule()) ++rules;
    CheckRecord rec{subjectName(d, rules), d.span.file, std::nullopt};
    try {
      el.add(d);
    } catch (const DiagnosticError& e) {
      rec.diagnostic = e.diagnostic();
      records.push_back(std::move(rec));
      return records;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

int checkCorpus(const Invocation& inv, const LoadedTheory& lt, std::ostream& out,
                std::ostream& err, json& results) {
  if (!lt.builtin) throw UsageError("--corpus needs a built-in theory (stt or coc)");
  int code = kOk;
  for (const GoldenExample& g : goldenCorpus(lt.get().id())) {
    json rec{{"subject", "golden:" + g.name}, {"file", nullptr}};
    try {
      verifyGolden(lt.get(), g);
      rec["status"] = "ok";
      if (!inv.json) out << "OK golden:" << g.name << '\n';
    } catch (const DiagnosticError& e) {
      rec["status"] = "error";
      rec["diagnostic"] = toJson(e.diagnostic());
      reportDiagnostic(inv, err, e.diagnostic());
      code = kDomainFailure;
    }
    results.push_back(std::move(rec));
  }
  return code;
}

template <typename F>
int guarded(const Invocation& inv, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DiagnosticError& e) {
    reportDiagnostic(inv, err, e.diagnostic());
    return kDomainFailure;
  }
}

}  // namespace

int cmdCheck(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(inv, err, [&] {
    LoadedTheory lt = loadTheory(inv.theory, inv.fuel);
    json results = json::array();
    int code = kOk;
    if (inv.corpus) code = checkCorpus(inv, lt, out, err, results);

    std::vector<std::vector<CheckRecord>> perUnit;
    if (inv.jobs > 1 && inv.inputs.size() > 1) {
      // Independent units: each file is elaborated on top of the theory alone.
      std::vector<std::future<std::vector<CheckRecord>>> tasks;
      for (const std::string& path : inv.inputs) {
        tasks.push_back(std::async(std::launch::async, [&lt, path, &inv] {
          return checkUnit(lt.get(), {path}, inv.fuel);
        }));
        if (tasks.size() >= inv.jobs) {
          // Bounded parallelism: wait for the oldest pending task.
          tasks[tasks.size() - inv.jobs].wait();
        }
      }
      for (auto& t : tasks) perUnit.push_back(t.get());
    } else if (!inv.inputs.empty()) {
      perUnit.push_back(checkUnit(lt.get(), inv.inputs, inv.fuel));
    }

    for (const auto& unit : perUnit) {
      for (const CheckRecord& rec : unit) {
        json j{{"subject", rec.subject.empty() ? json(nullptr) : json(rec.subject)},
               {"file", rec.file}};
        if (rec.diagnostic) {
          j["status"] = "error";
          j["diagnostic"] = toJson(*rec.diagnostic);
          reportDiagnostic(inv, err, *rec.diagnostic);
          code = kDomainFailure;
        } else {
          j["status"] = "ok";
          if (!inv.json) out << "OK " << rec.subject << '\n';
        }
        results.push_back(std::move(j));
      }
    }
    if (inv.json) out << results.dump(2) << '\n';
    return code;
  });
}

int cmdAnalyze(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(inv, err, [&] {
    LoadedTheory lt = loadTheory(inv.theory, inv.fuel);
    auto decls = parseInputs(lt.get(), inv.inputs);
    auto reports = analyzeFile(lt.get(), decls);
    bool all = true;
    json arr = json::array();
    for (const AnalysisReport& r : reports) {
      all = all && r.inS;
      if (inv.json) {
        arr.push_back(toJson(r));
      } else {
        printReport(out, r);
      }
    }
    if (inv.json) out << arr.dump(2) << '\n';
    return all ? kOk : kDomainFailure;
  });
}

int cmdTranslate(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(inv, err, [&] {
    if (inv.theory == "stt") throw UsageError("translate needs a Calculus of Constructions theory");
    LoadedTheory lt = loadTheory(inv.theory, inv.fuel);
    auto decls = parseInputs(lt.get(), inv.inputs);
    TranslationResult result;
    try {
      result = translateFile(decls, lt.get(), sttTheory());
    } catch (const NotInSError& e) {
      json arr = json::array();
      for (const AnalysisReport& r : e.reports()) {
        if (inv.json) {
          arr.push_back(toJson(r));
        } else {
          printReport(out, r);
        }
      }
      if (inv.json) out << arr.dump(2) << '\n';
      reportDiagnostic(inv, err, e.diagnostic());
      return static_cast<int>(kDomainFailure);
    }
    std::string text = printFile(result.declarations);
    if (inv.output.empty()) {
      out << text;
      return static_cast<int>(kOk);
    }
    std::ofstream file(inv.output, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + inv.output + "'");
    file << text;
    if (inv.json) {
      json arr = json::array();
      for (const AnalysisReport& r : result.reports) arr.push_back(toJson(r));
      out << arr.dump(2) << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmdReport(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(inv, err, [&] {
    LoadedTheory lt = loadTheory(inv.theory, inv.fuel);
    auto decls = parseInputs(lt.get(), inv.inputs);
    auto report = ingredientReport(lt.get(), decls);
    if (inv.json) {
      json arr = json::array();
      for (const auto& [name, ingredients] : report) {
        arr.push_back(json{{"subject", name}, {"ingredients", toJson(ingredients)}});
      }
      out << arr.dump(2) << '\n';
      return static_cast<int>(kOk);
    }
    for (const auto& [name, ingredients] : report) {
      out << name << ":\n"
          << "  framework: " << joined(ingredients.framework) << '\n'
          << "  library: " << joined(ingredients.library) << '\n'
          << "  axioms: " << joined(ingredients.axioms) << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type checker and proof translator for the lambda-Pi calculus modulo rewriting",
               "dkm"};
  app.require_subcommand(1);

  Invocation inv;
  std::optional<std::uint64_t> fuelFlag;

  auto addCommon = [&](CLI::App* sub, const std::string& defaultTheory) {
    sub->add_option("inputs", inv.inputs, "Input .dkm files, elaborated in order");
    sub->add_option("--theory", inv.theory, "stt, coc, or a path to a theory file")
        ->default_str(defaultTheory);
    sub->add_flag("--json", inv.json, "Machine-readable output");
    sub->add_option("--fuel", fuelFlag, "Reduction step budget per declaration");
    sub->callback([&inv, sub, defaultTheory] {
      inv.command = sub->get_name();
      if (inv.theory.empty()) inv.theory = defaultTheory;
    });
    return sub;
  };

  auto* check = addCommon(app.add_subcommand("check", "Type-check declarations"), "stt");
  check->add_flag("--corpus", inv.corpus, "Also verify the theory's built-in golden corpus");
  check->add_option("--jobs", inv.jobs, "Check input files independently, in parallel")
      ->check(CLI::Range(1u, 256u));
  addCommon(app.add_subcommand("analyze", "Decide subset-S membership"), "coc");
  auto* translate =
      addCommon(app.add_subcommand("translate", "Translate subset-S proofs to simple type theory"),
                "coc");
  translate->add_option("-o,--output", inv.output, "Output .dkm file (default: standard output)");
  addCommon(app.add_subcommand("report", "List the constants each declaration depends on"), "stt");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  inv.fuel = kDefaultFuel;
  if (fuelFlag) {
    inv.fuel = *fuelFlag;
  } else if (const char* env = std::getenv("DKM_FUEL")) {
    try {
      std::size_t used = 0;
      inv.fuel = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      err << "error: DKM_FUEL must be a non-negative integer\n";
      return kUsage;
    }
  }

  if (inv.command == "check") return cmdCheck(inv, out, err);
  if (inv.command == "analyze") return cmdAnalyze(inv, out, err);
  if (inv.command == "translate") return cmdTranslate(inv, out, err);
  return cmdReport(inv, out, err);
}

}  // namespace dkm::cli
