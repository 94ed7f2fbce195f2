#pragma once

#include <span>

#include "betafreq/digit_seq.hpp"
#include "betafreq/orbit.hpp"

namespace betafreq {

// T_k(x) = beta*x - k, exact or enclosure arithmetic
FieldElement apply_map(const Beta& beta, long digit, const FieldElement& x);
Ball apply_map(const Beta& beta, long digit, const Ball& x);

// True iff every intermediate orbit point of the prefix stays inside
// [0, floor(beta)/(beta-1)], i.e. the prefix extends to a full expansion.
bool is_feasible(const Beta& beta, const FieldElement& x, std::span<const uint8_t> digits);

// Greedy expansion: digit = largest k in the alphabet with T_k(orbit) >= 0,
// ties resolved toward the larger digit.
DigitSeq greedy_expand(const Beta& beta, const FieldElement& x, size_t n,
                       const GenOptions& opt = {});

// sum_i digits[i] * beta^-(i+1), exact
FieldElement partial_sum(const Beta& beta, std::span<const uint8_t> digits);
Ball partial_sum_ball(const Beta& beta, std::span<const uint8_t> digits, mpfr_prec_t prec);

// Inclusive feasible digit window at orbit value u = beta*y: digits k with
// T_k(y) = u - k in [0, hi]. Used by the enumerator and branch search.
struct DigitWindow {
  long lo;
  long hi;
  bool empty() const { return lo > hi; }
};
DigitWindow feasible_digits(const Beta& beta, const FieldElement& u);

// Shared generator driver: exact backend runs once, ball backend runs under
// the restart policy (whole-stream restart at doubled precision).
template <class Body>
DigitSeq run_stream(const Beta& beta, const FieldElement& x, size_t n, const GenOptions& opt,
                    Body&& body) {
  if (opt.arith == Arith::exact) {
    DigitSeq out;
    out.beta = beta;
    out.x = x;
    out.arith = Arith::exact;
    Orbit orb = Orbit::exact(beta, x);
    out.digits.reserve(n);
    body(orb, out);
    return out;
  }
  PrecisionPolicy pol = opt.policy;
  if (pol.digits_budget <= 0) pol.digits_budget = static_cast<long>(n);
  int restarts = 0;
  DigitSeq out = run_with_restarts(
      pol, beta.log2_upper(),
      [&](mpfr_prec_t prec) {
        DigitSeq attempt;
        attempt.beta = beta;
        attempt.x = x;
        attempt.arith = Arith::ball;
        attempt.precision_bits = prec;
        Orbit orb = Orbit::ball(beta, x, prec);
        attempt.digits.reserve(n);
        body(orb, attempt);
        return attempt;
      },
      &restarts);
  out.restarts = restarts;
  return out;
}

// throws OutOfDomain unless 0 <= x <= interval_hi
void require_in_interval(const Beta& beta, const FieldElement& x);

} // namespace betafreq
