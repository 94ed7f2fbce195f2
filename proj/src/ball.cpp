#include "betafreq/ball.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <vector>

#include "betafreq/errors.hpp"

namespace betafreq {

namespace {
constexpr mpfr_prec_t kRadPrec = 32;
} // namespace

// Raw helpers shared by the arithmetic. All radius updates round up.
struct BallOps {
  // rad += ulp(mid) if the last midpoint operation was inexact.
  static void absorb_rounding(Ball& x, int ternary) {
    if (ternary == 0) return;
    assert(!mpfr_zero_p(x.mid_)); // inexact rounding to zero cannot happen here
    mpfr_t ulp;
    mpfr_init2(ulp, kRadPrec);
    mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(x.mid_) - mpfr_get_prec(x.mid_), MPFR_RNDU);
    mpfr_add(x.rad_, x.rad_, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
  }
};

Ball::Ball(mpfr_prec_t precision_bits) {
  mpfr_init2(mid_, std::max<mpfr_prec_t>(precision_bits, MPFR_PREC_MIN));
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(rad_, 1);
}

Ball::Ball(const Ball& o) {
  mpfr_init2(mid_, mpfr_get_prec(o.mid_));
  mpfr_init2(rad_, kRadPrec);
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& o) noexcept {
  mpfr_init2(mid_, MPFR_PREC_MIN);
  mpfr_init2(rad_, kRadPrec);
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
}

Ball& Ball::operator=(const Ball& o) {
  if (this != &o) {
    mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
  }
  return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
  return *this;
}

Ball::~Ball() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

Ball Ball::from_int(long v, mpfr_prec_t prec) {
  Ball b(prec);
  int t = mpfr_set_si(b.mid_, v, MPFR_RNDN);
  BallOps::absorb_rounding(b, t);
  return b;
}

Ball Ball::from_rational(const Rational& q, mpfr_prec_t prec) {
  Ball b(prec);
  int t = mpfr_set_q(b.mid_, q.get_mpq_t(), MPFR_RNDN);
  BallOps::absorb_rounding(b, t);
  return b;
}

Ball Ball::from_interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  Ball b(prec);
  Rational mid = (lo + hi) / 2;
  mpfr_set_q(b.mid_, mid.get_mpq_t(), MPFR_RNDN);
  // radius covering both endpoints from the rounded (dyadic, hence exactly
  // representable as a rational) midpoint
  Rational rounded_mid;
  mpfr_get_q(rounded_mid.get_mpq_t(), b.mid_);
  Rational d = abs(rounded_mid - lo);
  Rational d2 = abs(hi - rounded_mid);
  if (d2 > d) d = d2;
  mpfr_set_q(b.rad_, d.get_mpq_t(), MPFR_RNDU);
  return b;
}

mpfr_prec_t Ball::precision_bits() const { return mpfr_get_prec(mid_); }

bool Ball::is_exact() const { return mpfr_zero_p(rad_); }

double Ball::mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }

double Ball::rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

Rational Ball::lower_bound() const {
  Rational m, r;
  mpfr_get_q(m.get_mpq_t(), mid_);
  mpfr_get_q(r.get_mpq_t(), rad_);
  return m - r;
}

Rational Ball::upper_bound() const {
  Rational m, r;
  mpfr_get_q(m.get_mpq_t(), mid_);
  mpfr_get_q(r.get_mpq_t(), rad_);
  return m + r;
}

bool Ball::contains(const Rational& q) const {
  return lower_bound() <= q && q <= upper_bound();
}

bool Ball::contains_zero() const { return contains(Rational(0)); }

Ball Ball::rounded(mpfr_prec_t prec) const {
  Ball b(prec);
  int t = mpfr_set(b.mid_, mid_, MPFR_RNDN);
  mpfr_set(b.rad_, rad_, MPFR_RNDU);
  BallOps::absorb_rounding(b, t);
  return b;
}

namespace {

mpfr_prec_t result_prec(const Ball& a, const Ball& b) {
  return std::max(mpfr_get_prec(a.mid()), mpfr_get_prec(b.mid()));
}

// |x| rounded up at radius precision
void abs_up(mpfr_t out, mpfr_srcptr x) { mpfr_abs(out, x, MPFR_RNDU); }

} // namespace

Ball operator+(const Ball& a, const Ball& b) {
  Ball r(result_prec(a, b));
  int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  BallOps::absorb_rounding(r, t);
  return r;
}

Ball operator-(const Ball& a, const Ball& b) {
  Ball r(result_prec(a, b));
  int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  BallOps::absorb_rounding(r, t);
  return r;
}

Ball operator*(const Ball& a, const Ball& b) {
  Ball r(result_prec(a, b));
  int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |am|*rb + |bm|*ra + ra*rb
  mpfr_t am, bm, term;
  mpfr_init2(am, kRadPrec);
  mpfr_init2(bm, kRadPrec);
  mpfr_init2(term, kRadPrec);
  abs_up(am, a.mid_);
  abs_up(bm, b.mid_);
  mpfr_mul(term, am, b.rad_, MPFR_RNDU);
  mpfr_set(r.rad_, term, MPFR_RNDU);
  mpfr_mul(term, bm, a.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term, MPFR_RNDU);
  mpfr_mul(term, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term, MPFR_RNDU);
  mpfr_clears(am, bm, term, (mpfr_ptr)nullptr);
  BallOps::absorb_rounding(r, t);
  return r;
}

Ball operator/(const Ball& a, const Ball& b) {
  // need |bm| - rb > 0, otherwise the divisor enclosure straddles zero
  mpfr_t bm_lo, am, term;
  mpfr_init2(bm_lo, kRadPrec);
  abs_up(bm_lo, b.mid_);  // upper bound of |bm|; need lower: recompute down
  mpfr_abs(bm_lo, b.mid_, MPFR_RNDD);
  mpfr_sub(bm_lo, bm_lo, b.rad_, MPFR_RNDD);
  if (mpfr_sgn(bm_lo) <= 0) {
    mpfr_clear(bm_lo);
    throw AmbiguousAtPrecision("ball division by an enclosure containing zero");
  }
  Ball r(result_prec(a, b));
  int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // error <= ra/|b|_lo + |a/b mid| * rb/|b|_lo
  mpfr_init2(am, kRadPrec);
  mpfr_init2(term, kRadPrec);
  mpfr_div(term, a.rad_, bm_lo, MPFR_RNDU);
  mpfr_set(r.rad_, term, MPFR_RNDU);
  abs_up(am, r.mid_);
  mpfr_nextabove(am);  // covers |am/bm| <= |rounded mid| + ulp
  mpfr_mul(term, am, b.rad_, MPFR_RNDU);
  mpfr_div(term, term, bm_lo, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term, MPFR_RNDU);
  mpfr_clears(bm_lo, am, term, (mpfr_ptr)nullptr);
  BallOps::absorb_rounding(r, t);
  return r;
}

Ball Ball::operator-() const {
  Ball r(*this);
  mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
  return r;
}

Ball operator+(const Ball& a, long k) {
  Ball r(a);
  int t = mpfr_add_si(r.mid_, a.mid_, k, MPFR_RNDN);
  BallOps::absorb_rounding(r, t);
  return r;
}

Ball operator-(const Ball& a, long k) { return a + (-k); }

Ball operator*(const Ball& a, long k) {
  Ball r(a);
  int t = mpfr_mul_si(r.mid_, a.mid_, k, MPFR_RNDN);
  mpfr_mul_si(r.rad_, a.rad_, k >= 0 ? k : -k, MPFR_RNDU);
  BallOps::absorb_rounding(r, t);
  return r;
}

Ball operator/(const Ball& a, long k) {
  if (k == 0) throw AmbiguousAtPrecision("ball division by zero");
  Ball r(a);
  int t = mpfr_div_si(r.mid_, a.mid_, k, MPFR_RNDN);
  mpfr_div_si(r.rad_, a.rad_, k >= 0 ? k : -k, MPFR_RNDU);
  // rounding of the radius division must go up in magnitude; RNDU handles it
  BallOps::absorb_rounding(r, t);
  return r;
}

Ordering Ball::compare(const Ball& a, const Ball& b) {
  mpfr_prec_t p = std::max(a.precision_bits(), b.precision_bits()) + 64;
  mpfr_t a_hi, a_lo, b_hi, b_lo;
  mpfr_inits2(p, a_hi, a_lo, b_hi, b_lo, (mpfr_ptr)nullptr);
  mpfr_add(a_hi, a.mid_, a.rad_, MPFR_RNDU);
  mpfr_sub(a_lo, a.mid_, a.rad_, MPFR_RNDD);
  mpfr_add(b_hi, b.mid_, b.rad_, MPFR_RNDU);
  mpfr_sub(b_lo, b.mid_, b.rad_, MPFR_RNDD);
  Ordering result = Ordering::ambiguous;
  if (mpfr_cmp(a_hi, b_lo) < 0) result = Ordering::less;
  else if (mpfr_cmp(a_lo, b_hi) > 0) result = Ordering::greater;
  mpfr_clears(a_hi, a_lo, b_hi, b_lo, (mpfr_ptr)nullptr);
  return result;
}

std::string Ball::str(int decimal_digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", decimal_digits, mid_);
  std::string out(s);
  mpfr_free_str(s);
  if (!is_exact()) {
    mpfr_asprintf(&s, " +/- %.3Rg", rad_);
    out += s;
    mpfr_free_str(s);
  }
  return out;
}

Ordering certified_compare(const Ball& a, const Ball& b) { return Ball::compare(a, b); }

Ordering certified_compare(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  if (c < 0) return Ordering::less;
  if (c > 0) return Ordering::greater;
  return Ordering::equal;
}

} // namespace betafreq
