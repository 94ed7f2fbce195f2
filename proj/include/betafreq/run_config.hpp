#pragma once

#include <optional>
#include <string>
#include <vector>

namespace betafreq {

/// Everything a CLI run needs, serializable so that a config round-trips
/// byte-identically (reproducibility contract: config + seed -> same outputs).
struct RunConfig {
  std::string command;  // expand | density | enumerate | variants | cutpoints | verify
  std::string beta_spec = "pg:2";
  std::string algo = "greedy";  // greedy | balanced | tuned
  std::string p = "1/2";        // tuned target, exact rational/decimal text
  std::string x;                // start point; empty -> seeded uniform draw
  unsigned long n = 1000;
  unsigned long seed = 1;
  unsigned long samples = 1;
  int m = 2;
  int depth = 10;
  int bins = 256;
  unsigned long steps = 1000000;
  unsigned long burn_in = 1000;
  unsigned long count = 2;
  unsigned long horizon = 10000;
  std::string arith = "exact";  // exact | ball
  long base_bits = 64;
  int max_restarts = 3;
  std::string out;          // digit stream / csv / prefix list path ("-" = stdout)
  std::string summary_out;  // JSON summary path
  int threads = 0;          // 0 = hardware
  std::vector<int> only;    // verify: criteria subset, empty = all

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
  bool operator==(const RunConfig&) const = default;
};

} // namespace betafreq
