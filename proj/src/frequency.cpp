#include "betafreq/frequency.hpp"

#include <algorithm>
#include <cmath>

#include "betafreq/errors.hpp"

namespace betafreq {

FrequencyProfile freq_profile(std::span<const uint8_t> digits, long alphabet_max,
                              uint64_t burn_in) {
  if (digits.empty()) throw EmptySequence("freq_profile over an empty stream");
  if (burn_in >= digits.size()) throw InvalidSpec("burn_in must be smaller than the stream");
  const size_t a = static_cast<size_t>(alphabet_max) + 1;
  FrequencyProfile p;
  p.n = digits.size();
  p.burn_in = burn_in;
  p.counts.assign(a, 0);
  // extrema of prefix ratios tracked as exact fractions (count, index)
  std::vector<std::pair<uint64_t, uint64_t>> hi(a, {0, 1}), lo(a, {1, 1});
  bool seeded = false;
  std::vector<uint64_t> run(a, 0);
  for (uint64_t i = 1; i <= digits.size(); ++i) {
    uint8_t d = digits[i - 1];
    if (d >= a) throw DigitOutOfAlphabet(std::to_string(int(d)));
    ++run[d];
    if (i <= burn_in) continue;
    if (!seeded) {
      for (size_t k = 0; k < a; ++k) hi[k] = lo[k] = {run[k], i};
      seeded = true;
      continue;
    }
    for (size_t k = 0; k < a; ++k) {
      // run[k]/i vs stored extrema, exact cross-multiplication
      unsigned __int128 lhs = static_cast<unsigned __int128>(run[k]) * hi[k].second;
      unsigned __int128 rhs = static_cast<unsigned __int128>(hi[k].first) * i;
      if (lhs > rhs) hi[k] = {run[k], i};
      lhs = static_cast<unsigned __int128>(run[k]) * lo[k].second;
      rhs = static_cast<unsigned __int128>(lo[k].first) * i;
      if (lhs < rhs) lo[k] = {run[k], i};
    }
  }
  p.counts = run;
  p.point.resize(a);
  p.upper.resize(a);
  p.lower.resize(a);
  for (size_t k = 0; k < a; ++k) {
    p.point[k] = static_cast<double>(run[k]) / static_cast<double>(p.n);
    p.upper[k] = static_cast<double>(hi[k].first) / static_cast<double>(hi[k].second);
    p.lower[k] = static_cast<double>(lo[k].first) / static_cast<double>(lo[k].second);
  }
  return p;
}

FrequencyProfile freq_profile(std::span<const uint8_t> digits, long alphabet_max) {
  return freq_profile(digits, alphabet_max, digits.size() / 10);
}

double max_balance_defect(const FrequencyProfile& profile) {
  const size_t m = profile.counts.size() - 1;
  double worst = 0;
  for (size_t k = 0; k < profile.counts.size(); ++k) {
    double d = std::abs(profile.point[k] - profile.point[m - k]);
    worst = std::max(worst, d);
  }
  return worst;
}

bool is_balanced(const FrequencyProfile& profile, double tol) {
  return max_balance_defect(profile) <= tol;
}

FrequencyProfile merge(const FrequencyProfile& a, const FrequencyProfile& b) {
  if (a.counts.size() != b.counts.size()) throw InvalidSpec("merging incompatible profiles");
  FrequencyProfile p = a;
  p.n += b.n;
  p.burn_in = std::min(a.burn_in, b.burn_in);
  for (size_t k = 0; k < p.counts.size(); ++k) {
    p.counts[k] += b.counts[k];
    p.point[k] = static_cast<double>(p.counts[k]) / static_cast<double>(p.n);
    p.upper[k] = std::max(a.upper[k], b.upper[k]);
    p.lower[k] = std::min(a.lower[k], b.lower[k]);
  }
  return p;
}

} // namespace betafreq
