#include "betafreq/beta_core.hpp"

#include "betafreq/errors.hpp"

namespace betafreq {

namespace {

void require_digit(const Beta& beta, long digit) {
  if (digit < 0 || digit > beta.max_digit())
    throw DigitOutOfAlphabet(std::to_string(digit) + " for beta with max digit " +
                             std::to_string(beta.max_digit()));
}

} // namespace

void require_in_interval(const Beta& beta, const FieldElement& x) {
  if (x.sign() < 0 || (x - beta.interval_hi()).sign() > 0)
    throw OutOfDomain("x outside [0, floor(beta)/(beta-1)]");
}

FieldElement apply_map(const Beta& beta, long digit, const FieldElement& x) {
  require_digit(beta, digit);
  return x * beta.value() - FieldElement::from_rational(beta.field(), Rational(digit));
}

Ball apply_map(const Beta& beta, long digit, const Ball& x) {
  require_digit(beta, digit);
  return x * beta.value_ball(x.precision_bits()) - digit;
}

bool is_feasible(const Beta& beta, const FieldElement& x, std::span<const uint8_t> digits) {
  require_in_interval(beta, x);
  for (uint8_t d : digits) require_digit(beta, d);
  Orbit orb = Orbit::exact(beta, x);
  int h_hi = orb.register_constant(beta.interval_hi());
  orb.reserve(digits.size());
  for (uint8_t d : digits) {
    orb.mul_beta();
    orb.sub_digit(d);
    if (orb.sign_vs(-1) < 0 || orb.sign_vs(h_hi) > 0) return false;
  }
  return true;
}

DigitSeq greedy_expand(const Beta& beta, const FieldElement& x, size_t n, const GenOptions& opt) {
  require_in_interval(beta, x);
  const long maxd = beta.max_digit();
  return run_stream(beta, x, n, opt, [&](Orbit& orb, DigitSeq& out) {
    orb.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      orb.mul_beta();
      long k = orb.floor_minus(-1, maxd);
      orb.sub_digit(k);
      out.digits.push_back(static_cast<uint8_t>(k));
    }
  });
}

FieldElement partial_sum(const Beta& beta, std::span<const uint8_t> digits) {
  for (uint8_t d : digits) require_digit(beta, d);
  FieldElement inv = beta.value().inverse();
  FieldElement s = FieldElement::zero(beta.field());
  for (size_t i = digits.size(); i-- > 0;) {
    s = (s + FieldElement::from_rational(beta.field(), Rational(digits[i]))) * inv;
  }
  return s;
}

Ball partial_sum_ball(const Beta& beta, std::span<const uint8_t> digits, mpfr_prec_t prec) {
  for (uint8_t d : digits) require_digit(beta, d);
  Ball inv = Ball::from_int(1, prec) / beta.value_ball(prec);
  Ball s = Ball::from_int(0, prec);
  for (size_t i = digits.size(); i-- > 0;) {
    s = (s + static_cast<long>(digits[i])) * inv;
  }
  return s;
}

DigitWindow feasible_digits(const Beta& beta, const FieldElement& u) {
  // k in [ceil(u - hi), floor(u)] intersected with the alphabet
  FieldElement t = u;
  DigitWindow w{0, beta.max_digit()};
  // floor(u): count down from max_digit
  long k = beta.max_digit();
  while (k >= 0 && (t - FieldElement::from_rational(beta.field(), Rational(k))).sign() < 0) --k;
  w.hi = k;
  FieldElement shifted = u - beta.interval_hi();
  long lo = 0;
  while (lo <= w.hi &&
         (shifted - FieldElement::from_rational(beta.field(), Rational(lo))).sign() > 0)
    ++lo;
  w.lo = lo;
  if (w.hi < 0) w.lo = 1;  // empty window
  return w;
}

} // namespace betafreq
