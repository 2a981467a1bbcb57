#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace opschur {

struct CheckResult {
  std::string name;
  bool pass = false;
  double slack = 0.0;  // measured headroom against the check's threshold
  std::string detail;
};

struct VerifyOptions {
  bool inject_fault = false;  // perturbs the submultiplicativity measurement
  std::uint64_t seed = 0;
};

// Runs the named invariant suites of all modules against the corpus. One
// result per named invariant; slack is the worst measured deviation across
// applicable corpus entries.
std::vector<CheckResult> run_verification(const std::vector<CorpusEntry>& corpus,
                                          const VerifyOptions& opt = {});

}  // namespace opschur
