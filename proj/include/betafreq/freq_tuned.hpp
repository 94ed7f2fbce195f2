#pragma once

#include <optional>
#include <string>

#include "betafreq/beta_core.hpp"

namespace betafreq {

/// Parameters of the two-branch map whose typical orbits carry zero-frequency
/// p: digit 0 on [0, cut), digit 1 on [cut, 1/(beta-1)], where cut = (b+1)/beta
/// and b solves f(b) = p for the affine frequency profile f. The window
/// [b, b+1] is where the orbits of b and b+1 merge after m steps.
struct TunedParams {
  int m = 0;
  Beta beta;
  std::optional<Rational> target_freq;  // p as given, when rational
  FieldElement p_exact;                 // p as a field element (always set)
  FieldElement freq_radius;             // c = (m-1)(2-beta)/(2(m beta + beta - 2m))
  FieldElement window_lo;               // b
  FieldElement cut;                     // (b+1)/beta
};

// certified pseudo-golden base: the root in (1,2) of t^m - t^(m-1) - ... - 1
Beta pseudo_golden(int m);

// c > 0; f(0) = 1/2 + c and f(1/(beta-1) - 1) = 1/2 - c hold exactly
FieldElement freq_radius(const Beta& beta);

// f(x) = (beta-1)(1 - (m-1)x) / (m beta + beta - 2m)
FieldElement freq_of_window_lo(const Beta& beta, const FieldElement& x);

// invert f at a rational target; throws FrequencyOutOfRange outside [1/2-c, 1/2+c]
TunedParams target_to_cut(const Beta& beta, const Rational& p);
// build params from b directly (p = f(b) exactly; covers the irrational endpoints)
TunedParams params_from_window_lo(const Beta& beta, const FieldElement& b);

DigitSeq tuned_expand(const TunedParams& params, const FieldElement& x, size_t n,
                      const GenOptions& opt = {});

/// Exact verification of the orbit identities behind the density truncation:
/// for 1 <= k < m the map gives T^k(b) = beta^k b < cut <= T^k(b+1) with
/// T^k(b+1) = beta^k b + beta^k - beta^(k-1) - ... - 1, and T^m(b) = T^m(b+1).
struct OrbitIdentityReport {
  bool ok = true;
  std::vector<std::string> lines;
  std::vector<FieldElement> orbit_lo;  // T^k(b), k = 0..m
  std::vector<FieldElement> orbit_hi;  // T^k(b+1)
};
// throws IdentityViolated on failure (would signal an arithmetic bug)
OrbitIdentityReport orbit_identities(const TunedParams& params);

} // namespace betafreq
