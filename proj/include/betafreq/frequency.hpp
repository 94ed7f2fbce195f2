#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "betafreq/rational.hpp"

namespace betafreq {

/// Digit-frequency statistics of a finite stream. `point` is the count/n
/// frequency; `upper`/`lower` are finite-sample estimates of the limsup/liminf
/// frequencies, taken as the extrema of the prefix ratios at indices past
/// burn_in (an infinite-limit quantity is not computable from a finite run).
struct FrequencyProfile {
  std::vector<uint64_t> counts;
  uint64_t n = 0;
  uint64_t burn_in = 0;
  std::vector<double> point;
  std::vector<double> upper;
  std::vector<double> lower;

  Rational point_exact(size_t k) const {
    Rational q(counts[k], n);
    q.canonicalize();
    return q;
  }
  size_t alphabet_size() const { return counts.size(); }
};

// burn_in must be < digits.size(); alphabet is {0, ..., alphabet_max}
FrequencyProfile freq_profile(std::span<const uint8_t> digits, long alphabet_max,
                              uint64_t burn_in);
// default burn-in n/10
FrequencyProfile freq_profile(std::span<const uint8_t> digits, long alphabet_max);

// |point[k] - point[M-k]| <= tol for every digit k
bool is_balanced(const FrequencyProfile& profile, double tol);
double max_balance_defect(const FrequencyProfile& profile);

// pooled counts; upper/lower become the across-shard envelope
FrequencyProfile merge(const FrequencyProfile& a, const FrequencyProfile& b);

} // namespace betafreq
