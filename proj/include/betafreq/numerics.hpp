#pragma once

#include <cmath>

#include "betafreq/ball.hpp"
#include "betafreq/errors.hpp"
#include "betafreq/field.hpp"
#include "betafreq/polynomial.hpp"

namespace betafreq {

/// Working-precision budget for certified digit streams. Each map step
/// multiplies the enclosure radius by beta, so an n-digit run starting from
/// radius 2^-prec ends near 2^(n*log2(beta) - prec); the budget keeps that
/// below 2^-base_bits.
struct PrecisionPolicy {
  long base_bits = 64;
  int max_restarts = 3;
  long digits_budget = 0;

  mpfr_prec_t working_bits(double log2_beta_upper) const {
    double bits = std::ceil(static_cast<double>(digits_budget) * log2_beta_upper) + base_bits;
    if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
    return static_cast<mpfr_prec_t>(bits);
  }
};

// Runs fn(prec) under the restart policy: every AmbiguousAtPrecision doubles
// the working precision and reruns the whole stream, at most max_restarts
// times. Deterministic for fixed inputs.
template <class F>
auto run_with_restarts(const PrecisionPolicy& policy, double log2_beta_upper, F&& fn,
                       int* restarts_out = nullptr) {
  mpfr_prec_t prec = policy.working_bits(log2_beta_upper);
  for (int attempt = 0;; ++attempt) {
    try {
      if (restarts_out) *restarts_out = attempt;
      return fn(prec);
    } catch (const AmbiguousAtPrecision& e) {
      if (attempt >= policy.max_restarts)
        throw PrecisionExhausted(std::string("restarts exhausted: ") + e.what());
      prec *= 2;
    }
  }
}

} // namespace betafreq
