#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dkm::cli {

enum ExitCode : int { kOk = 0, kDomainFailure = 1, kUsage = 2 };

struct Invocation {
  std::string command;
  std::string theory;  // "stt", "coc" or a path to a .dkm theory file
  std::vector<std::string> inputs;
  std::string output;
  bool json = false;
  bool corpus = false;
  std::uint64_t fuel = 0;
  unsigned jobs = 1;
};

int cmdCheck(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmdAnalyze(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmdTranslate(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmdReport(const Invocation& inv, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dkm::cli
