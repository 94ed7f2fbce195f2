#pragma once

#include <string>
#include <vector>

namespace betafreq {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::vector<std::string> details;
};

struct AcceptanceOptions {
  std::vector<int> only;  // empty = all criteria
  int threads = 0;        // 0 = hardware concurrency
  bool verbose = false;
};

// Runs the full verification suite (seeded statistical runs + exact algebraic
// identities) with every tolerance pinned in code. Prints nothing; callers
// render the results.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

} // namespace betafreq
