// Verification suite runner: one line per criterion, nonzero exit on failure.
#include <cstdio>
#include <cstring>

#include "betafreq/acceptance.hpp"

int main(int argc, char** argv) {
  betafreq::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) opt.only.push_back(std::atoi(argv[++i]));
    else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) opt.threads = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--verbose") == 0) opt.verbose = true;
  }
  auto results = betafreq::run_acceptance(opt);
  if (results.empty()) {
    std::printf("no criteria ran\n");
    return 1;
  }
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] C%d %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
    for (const auto& d : r.details)
      if (!d.empty()) std::printf("       %s\n", d.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "all criteria passed" : "verification FAILED");
  return all ? 0 : 1;
}
