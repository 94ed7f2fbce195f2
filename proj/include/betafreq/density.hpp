#pragma once

#include "betafreq/freq_tuned.hpp"

namespace betafreq {

/// Piecewise-constant invariant density of the tuned two-branch map,
/// dmu/dL(x) = sum_{k=0}^{m-1} (1_[0,T^k(b+1)](x) - 1_[0,T^k(b)](x)) / beta^k,
/// truncated at m terms because the orbits of b and b+1 merge there. Cells are
/// closed on the left; exact breakpoints and step heights.
struct DensityModel {
  TunedParams params;
  std::vector<FieldElement> breakpoints;  // ascending, breakpoints.front() = 0, back() = hi
  std::vector<FieldElement> heights;      // heights[j] on [breakpoints[j], breakpoints[j+1])
  FieldElement mu_total;                  // = (m beta + beta - 2m)/(beta - 1), verified
  FieldElement nu_scale;                  // 1/mu_total
};

// terms = -1 uses the canonical m-term truncation; any N >= m must give the
// identical model (the extra indicators cancel exactly).
DensityModel build_density(const TunedParams& params, int terms = -1);

// step value at x, left-closed cells (the final cell includes hi)
FieldElement density_eval(const DensityModel& model, const FieldElement& x);

// mu of [a, b) integrated exactly from the model
FieldElement measure_mu(const DensityModel& model, const FieldElement& a, const FieldElement& b);

// exact nu-masses of `bins` equal-width bins over [0, hi]; sums to 1
std::vector<FieldElement> analytic_bin_masses(const DensityModel& model, int bins);

struct HistogramComparison {
  std::vector<double> bin_lo, bin_hi;
  std::vector<double> empirical;  // occupation masses after burn-in
  std::vector<double> analytic;   // exact nu bin masses, rounded
  double l1 = 0;
  size_t steps = 0;
  size_t burn_in = 0;
};

// Occupation histogram of one certified orbit against the analytic density.
HistogramComparison orbit_histogram_compare(const TunedParams& params, const FieldElement& x0,
                                            size_t n_steps, size_t burn_in, int bins);

} // namespace betafreq
