#pragma once

#include <functional>

#include "betafreq/beta_core.hpp"

namespace betafreq {

/// A position where the base expansion admits a different digit that keeps the
/// orbit inside the expansion interval, hence starts a distinct expansion.
struct BranchPoint {
  size_t index;      // 1-based digit position
  uint8_t alt_digit; // smallest feasible alternative at that position
};

// Smallest n in [start, start+horizon] (clipped to the digit buffer) with a
// feasible alternative digit; exhaustive over the alphabet at each position.
// Throws HorizonExhausted when the window has none.
BranchPoint find_branch(const Beta& beta, const FieldElement& x, std::span<const uint8_t> digits,
                        size_t start, size_t horizon);

// Expansion generator used for the base stream and the spliced tails.
using ExpansionOracle = std::function<DigitSeq(const FieldElement& x, size_t n)>;

struct Variant {
  std::vector<uint8_t> digits;
  size_t switch_index;
  uint8_t alt_digit;
};

// Theorem-style splice: the j-th variant agrees with the base expansion before
// its switch index n_j, differs there, and continues with the oracle expansion
// of the redirected orbit point. Switch indices are strictly increasing, so
// the variants are pairwise distinct.
std::vector<Variant> variants(const Beta& beta, const FieldElement& x,
                              const ExpansionOracle& oracle, size_t count, size_t total_len,
                              size_t horizon);

struct PrefixEnumeration {
  std::vector<std::string> prefixes;  // sorted digit words ("011" or "0,10,3" past digit 9)
  size_t visited = 0;                 // DFS nodes touched
};

// All depth-length digit words extendable to full expansions of x, by DFS over
// the remainder condition. Throws BudgetExceeded past the visit budget.
PrefixEnumeration enumerate_prefixes(const Beta& beta, const FieldElement& x, int depth,
                                     size_t budget = 10'000'000);

// prefix rendering used by enumerate_prefixes and the CLI
std::string digit_word(std::span<const uint8_t> digits, long alphabet_max);

} // namespace betafreq
