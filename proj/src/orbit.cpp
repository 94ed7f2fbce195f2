#include "betafreq/orbit.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <variant>

#include "betafreq/errors.hpp"

namespace betafreq {

namespace {

// ---------------------------------------------------------------------------
// Exact backend: y = (sum_i num[i] beta^i) / den with integer coefficients.
// mul_beta is a handful of mpz additions (pseudo-golden shape) or small
// multiplications; digit decisions go through the float screen and only fall
// back to exact field signs on near-ties and boundary hits.

struct ExactEngine {
  FieldPtr field;
  int d = 0;
  bool monic = false;
  bool ones_row = false;  // monic and every lower coefficient is -1
  std::vector<Int> num;
  std::vector<Int> scratch;
  Int den = 1;
  std::vector<std::vector<Int>> consts;
  size_t steps = 0;

  ExactEngine(const Beta& beta, const FieldElement& x0) {
    field = beta.field();
    if (!x0.field() || !x0.field()->same_as(*field))
      throw MixedFields("orbit start point from a different field");
    d = field->degree();
    const auto& pc = field->poly().coeffs();
    monic = pc[d] == 1;
    ones_row = monic;
    for (int i = 0; i < d; ++i)
      if (pc[i] != -1) ones_row = false;
    num = x0.num();
    num.resize(d, Int(0));
    scratch.assign(d, Int(0));
    den = x0.den();
  }

  void reserve_steps(size_t digits) {
    double log2_beta = std::log2(field->root_double()) + 1e-9;
    double lc_bits =
        monic ? 0.0 : static_cast<double>(mpz_sizeinbase(field->poly().leading().get_mpz_t(), 2));
    size_t cur = mpz_sizeinbase(den.get_mpz_t(), 2);
    for (const auto& n : num) cur = std::max(cur, mpz_sizeinbase(n.get_mpz_t(), 2));
    size_t bits = cur + 192 + static_cast<size_t>(digits * (log2_beta + lc_bits) + digits + 1);
    for (auto& n : num) mpz_realloc2(n.get_mpz_t(), bits);
    for (auto& n : scratch) mpz_realloc2(n.get_mpz_t(), bits);
    if (!monic) mpz_realloc2(den.get_mpz_t(), bits);
  }

  int register_const(const FieldElement& c) {
    assert(steps == 0);
    if (!c.field() || !c.field()->same_as(*field)) throw MixedFields("constant from a different field");
    Int nd;
    mpz_lcm(nd.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
    if (nd != den) {
      Int f;
      mpz_divexact(f.get_mpz_t(), nd.get_mpz_t(), den.get_mpz_t());
      for (auto& n : num) n *= f;
      for (auto& cv : consts)
        for (auto& n : cv) n *= f;
      den = nd;
    }
    Int f;
    mpz_divexact(f.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
    std::vector<Int> cv = c.num();
    cv.resize(d, Int(0));
    for (auto& n : cv) n *= f;
    consts.push_back(std::move(cv));
    return static_cast<int>(consts.size()) - 1;
  }

  void mul_beta() {
    const auto& pc = field->poly().coeffs();
    if (ones_row) {
      const Int& top = num[d - 1];
      for (int i = 0; i + 1 < d; ++i) num[i] += top;
      std::rotate(num.begin(), num.end() - 1, num.end());
    } else {
      for (int i = d - 1; i >= 0; --i) {
        if (i > 0) {
          if (monic) scratch[i] = num[i - 1];
          else mpz_mul(scratch[i].get_mpz_t(), num[i - 1].get_mpz_t(), pc[d].get_mpz_t());
        } else {
          scratch[0] = 0;
        }
        mpz_submul(scratch[i].get_mpz_t(), num[d - 1].get_mpz_t(), pc[i].get_mpz_t());
      }
      num.swap(scratch);
      if (!monic) {
        den *= pc[d];
        for (auto& cv : consts)
          for (auto& n : cv) n *= pc[d];
      }
    }
    ++steps;
  }

  void sub_digit(long k) {
    if (k > 0) mpz_submul_ui(num[0].get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k));
    else if (k < 0) mpz_addmul_ui(num[0].get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-k));
  }

  // sign of y - c[h] - k, with the exact fallback deciding ties
  int sign_diff(int h, long k) const {
    SignTerm terms[28];
    int n = 0;
    for (int i = 0; i < d; ++i) terms[n++] = {&num[i], i, 1};
    if (h >= 0)
      for (int i = 0; i < d; ++i) terms[n++] = {&consts[h][i], i, -1};
    if (k != 0) terms[n++] = {&den, 0, -k};
    if (auto s = field_sign_screen_terms(*field, terms, n)) return *s;
    std::vector<Int> diff(num.begin(), num.end());
    if (h >= 0)
      for (int i = 0; i < d; ++i) diff[i] -= consts[h][i];
    if (k != 0) diff[0] -= den * k;
    return field_sign(*field, diff);
  }

  int sign_vs(int h) const { return sign_diff(h, 0); }

  double value_of_terms(int h) const {
    SignTerm terms[28];
    int n = 0;
    for (int i = 0; i < d; ++i) terms[n++] = {&num[i], i, 1};
    if (h >= 0)
      for (int i = 0; i < d; ++i) terms[n++] = {&consts[h][i], i, -1};
    TermEstimate est = field_terms_estimate(*field, terms, n);
    if (est.all_zero) return 0.0;
    long de = 0;
    double dm = mpz_get_d_2exp(&de, den.get_mpz_t());
    long e = est.exp2 - de;
    if (e > 1000) e = 1000;
    if (e < -1000) e = -1000;
    return std::ldexp(est.value / dm, static_cast<int>(e));
  }

  long floor_minus(int h, long max_digit, bool* exact_hit) const {
    double w = value_of_terms(h);
    long k = static_cast<long>(std::floor(w));
    k = std::clamp(k, 0L, max_digit);
    // certify: largest k in [0, max_digit] with y - c >= k
    while (k > 0 && sign_diff(h, k) < 0) --k;
    int s_here = sign_diff(h, k);
    if (k == 0 && s_here < 0) {
      if (exact_hit) *exact_hit = false;
      return 0;
    }
    while (k < max_digit && sign_diff(h, k + 1) >= 0) ++k, s_here = sign_diff(h, k);
    if (exact_hit) *exact_hit = (s_here == 0);
    return k;
  }

  double approx() const { return value_of_terms(-1); }

  FieldElement value() const { return FieldElement::from_raw(field, num, den); }
};

// ---------------------------------------------------------------------------
// Ball backend: y as mpfr midpoint + upward-rounded radius at the working
// precision. Branch decisions throw AmbiguousAtPrecision when the enclosure
// straddles the comparison point; the restart driver doubles precision.

struct BallEngine {
  FieldPtr field;
  mpfr_prec_t prec = 64;
  mpfr_t y, rad;
  bool rat_beta = false;
  unsigned long bnum = 0, bden_odd = 1, bden_pow2 = 0;
  mpfr_t beta_mid, beta_rad, beta_hi;
  struct BConst {
    mpfr_t mid, rad;
  };
  std::vector<BConst> consts;
  size_t steps = 0;

  BallEngine(const Beta& beta, const FieldElement& x0, mpfr_prec_t p) : prec(p) {
    field = beta.field();
    mpfr_init2(y, prec);
    mpfr_init2(rad, 32);
    Ball x = x0.to_ball(prec);
    mpfr_set(y, x.mid(), MPFR_RNDN);
    mpfr_set(rad, x.rad(), MPFR_RNDU);
    mpfr_init2(beta_mid, prec);
    mpfr_init2(beta_rad, 32);
    mpfr_init2(beta_hi, 32);
    const auto& rr = field->rational_root();
    if (rr && rr->get_num().fits_ulong_p() && rr->get_den().fits_ulong_p()) {
      rat_beta = true;
      bnum = rr->get_num().get_ui();
      unsigned long q = rr->get_den().get_ui();
      while (q % 2 == 0) {
        q /= 2;
        ++bden_pow2;
      }
      bden_odd = q;
      mpfr_set_zero(beta_rad, 1);
      mpfr_set_q(beta_hi, rr->get_mpq_t(), MPFR_RNDU);
    } else {
      Ball b = field->root_enclosure(prec);
      mpfr_set(beta_mid, b.mid(), MPFR_RNDN);
      mpfr_set(beta_rad, b.rad(), MPFR_RNDU);
      mpfr_abs(beta_hi, b.mid(), MPFR_RNDU);
      mpfr_add(beta_hi, beta_hi, beta_rad, MPFR_RNDU);
    }
  }

  BallEngine(const BallEngine& o)
      : field(o.field), prec(o.prec), rat_beta(o.rat_beta), bnum(o.bnum), bden_odd(o.bden_odd),
        bden_pow2(o.bden_pow2), steps(o.steps) {
    mpfr_init2(y, prec);
    mpfr_init2(rad, 32);
    mpfr_set(y, o.y, MPFR_RNDN);
    mpfr_set(rad, o.rad, MPFR_RNDU);
    mpfr_init2(beta_mid, prec);
    mpfr_init2(beta_rad, 32);
    mpfr_init2(beta_hi, 32);
    mpfr_set(beta_mid, o.beta_mid, MPFR_RNDN);
    mpfr_set(beta_rad, o.beta_rad, MPFR_RNDU);
    mpfr_set(beta_hi, o.beta_hi, MPFR_RNDU);
    for (const auto& c : o.consts) {
      consts.emplace_back();
      mpfr_init2(consts.back().mid, mpfr_get_prec(c.mid));
      mpfr_init2(consts.back().rad, 32);
      mpfr_set(consts.back().mid, c.mid, MPFR_RNDN);
      mpfr_set(consts.back().rad, c.rad, MPFR_RNDU);
    }
  }

  ~BallEngine() {
    mpfr_clears(y, rad, beta_mid, beta_rad, beta_hi, (mpfr_ptr)nullptr);
    for (auto& c : consts) mpfr_clears(c.mid, c.rad, (mpfr_ptr)nullptr);
  }

  void absorb(int ternary) {
    if (ternary == 0 || mpfr_zero_p(y)) return;
    mpfr_t ulp;
    mpfr_init2(ulp, 32);
    mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(y) - prec, MPFR_RNDU);
    mpfr_add(rad, rad, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
  }

  int register_const(const FieldElement& c) {
    assert(steps == 0);
    Ball b = c.to_ball(prec + 32);
    consts.emplace_back();
    mpfr_init2(consts.back().mid, prec + 32);
    mpfr_init2(consts.back().rad, 32);
    mpfr_set(consts.back().mid, b.mid(), MPFR_RNDN);
    mpfr_set(consts.back().rad, b.rad(), MPFR_RNDU);
    return static_cast<int>(consts.size()) - 1;
  }

  void mul_beta() {
    if (rat_beta) {
      mpfr_mul_ui(rad, rad, bnum, MPFR_RNDU);
      if (bden_odd > 1) mpfr_div_ui(rad, rad, bden_odd, MPFR_RNDU);
      if (bden_pow2) mpfr_div_2ui(rad, rad, bden_pow2, MPFR_RNDU);
      int t = mpfr_mul_ui(y, y, bnum, MPFR_RNDN);
      absorb(t);
      if (bden_pow2) mpfr_div_2ui(y, y, bden_pow2, MPFR_RNDN);  // exact
      if (bden_odd > 1) {
        t = mpfr_div_ui(y, y, bden_odd, MPFR_RNDN);
        absorb(t);
      }
    } else {
      mpfr_t t32;
      mpfr_init2(t32, 32);
      mpfr_abs(t32, y, MPFR_RNDU);
      mpfr_mul(t32, t32, beta_rad, MPFR_RNDU);
      mpfr_mul(rad, rad, beta_hi, MPFR_RNDU);
      mpfr_add(rad, rad, t32, MPFR_RNDU);
      mpfr_clear(t32);
      int t = mpfr_mul(y, y, beta_mid, MPFR_RNDN);
      absorb(t);
    }
    ++steps;
  }

  void sub_digit(long k) {
    if (k == 0) return;
    int t = k > 0 ? mpfr_sub_ui(y, y, static_cast<unsigned long>(k), MPFR_RNDN)
                  : mpfr_add_ui(y, y, static_cast<unsigned long>(-k), MPFR_RNDN);
    absorb(t);
  }

  // sign of y - c[h] - k, certified against the radii
  int sign_diff(int h, long k) const {
    mpfr_t t, tau;
    mpfr_init2(t, 96);
    if (h >= 0) mpfr_sub(t, y, consts[h].mid, MPFR_RNDN);
    else mpfr_set(t, y, MPFR_RNDN);
    if (k != 0) mpfr_sub_si(t, t, k, MPFR_RNDN);
    mpfr_init2(tau, 32);
    mpfr_set(tau, rad, MPFR_RNDU);
    if (h >= 0) mpfr_add(tau, tau, consts[h].rad, MPFR_RNDU);
    bool radii_zero = mpfr_zero_p(tau);
    if (!mpfr_zero_p(t)) {
      mpfr_t ulp;
      mpfr_init2(ulp, 32);
      mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(t) - 94, MPFR_RNDU);
      mpfr_add(tau, tau, ulp, MPFR_RNDU);
      mpfr_clear(ulp);
    }
    int result = 2;  // 2 = undecided
    if (mpfr_cmpabs(t, tau) > 0) result = mpfr_sgn(t);
    mpfr_clears(t, tau, (mpfr_ptr)nullptr);
    if (result != 2) return result;
    if (radii_zero) {
      // exact midpoints: decide with a full-precision subtraction
      mpfr_t f;
      mpfr_init2(f, std::max<mpfr_prec_t>(prec, h >= 0 ? mpfr_get_prec(consts[h].mid) : 2) + 64);
      int e1 = h >= 0 ? mpfr_sub(f, y, consts[h].mid, MPFR_RNDN) : mpfr_set(f, y, MPFR_RNDN);
      int e2 = k != 0 ? mpfr_sub_si(f, f, k, MPFR_RNDN) : 0;
      int s = mpfr_sgn(f);
      bool exact = e1 == 0 && e2 == 0;
      mpfr_clear(f);
      if (exact) return s;
    }
    throw AmbiguousAtPrecision("orbit within radius of a branch point at step " +
                               std::to_string(steps));
  }

  int sign_vs(int h) const { return sign_diff(h, 0); }

  void reserve_steps(size_t) {}

  long floor_minus(int h, long max_digit, bool* exact_hit) const {
    mpfr_t w;
    mpfr_init2(w, 96);
    if (h >= 0) mpfr_sub(w, y, consts[h].mid, MPFR_RNDN);
    else mpfr_set(w, y, MPFR_RNDN);
    long k = static_cast<long>(std::floor(mpfr_get_d(w, MPFR_RNDN)));
    mpfr_clear(w);
    k = std::clamp(k, 0L, max_digit);
    while (k > 0 && sign_diff(h, k) < 0) --k;
    int s_here = sign_diff(h, k);
    if (k == 0 && s_here < 0) {
      if (exact_hit) *exact_hit = false;
      return 0;
    }
    while (k < max_digit && sign_diff(h, k + 1) >= 0) ++k, s_here = sign_diff(h, k);
    if (exact_hit) *exact_hit = (s_here == 0);
    return k;
  }

  double approx() const { return mpfr_get_d(y, MPFR_RNDN); }
};

} // namespace

struct Orbit::Impl {
  std::variant<ExactEngine, BallEngine> eng;
  explicit Impl(ExactEngine&& e) : eng(std::move(e)) {}
  explicit Impl(BallEngine&& e) : eng(std::move(e)) {}
  Impl(const Impl&) = default;
};

Orbit::Orbit() = default;
Orbit::~Orbit() = default;
Orbit::Orbit(Orbit&&) noexcept = default;

Orbit::Orbit(const Orbit& o) : impl_(std::make_unique<Impl>(*o.impl_)) {}

Orbit Orbit::exact(const Beta& beta, const FieldElement& x0) {
  Orbit o;
  o.impl_ = std::make_unique<Impl>(ExactEngine(beta, x0));
  return o;
}

Orbit Orbit::ball(const Beta& beta, const FieldElement& x0, mpfr_prec_t prec) {
  Orbit o;
  o.impl_ = std::make_unique<Impl>(BallEngine(beta, x0, prec));
  return o;
}

int Orbit::register_constant(const FieldElement& c) {
  return std::visit([&](auto& e) { return e.register_const(c); }, impl_->eng);
}

void Orbit::reserve(size_t digits) {
  std::visit([&](auto& e) { e.reserve_steps(digits); }, impl_->eng);
}

void Orbit::mul_beta() {
  std::visit([](auto& e) { e.mul_beta(); }, impl_->eng);
}

void Orbit::sub_digit(long k) {
  std::visit([&](auto& e) { e.sub_digit(k); }, impl_->eng);
}

int Orbit::sign_vs(int handle) const {
  return std::visit([&](auto& e) { return e.sign_vs(handle); }, impl_->eng);
}

long Orbit::floor_minus(int handle, long max_digit, bool* exact_hit) const {
  return std::visit([&](auto& e) { return e.floor_minus(handle, max_digit, exact_hit); },
                    impl_->eng);
}

double Orbit::approx() const {
  return std::visit([](auto& e) { return e.approx(); }, impl_->eng);
}

FieldElement Orbit::value() const {
  if (const auto* e = std::get_if<ExactEngine>(&impl_->eng)) return e->value();
  throw AmbiguousAtPrecision("ball orbit has no exact value");
}

Arith Orbit::arith() const {
  return std::holds_alternative<ExactEngine>(impl_->eng) ? Arith::exact : Arith::ball;
}

size_t Orbit::steps() const {
  return std::visit([](auto& e) { return e.steps; }, impl_->eng);
}

} // namespace betafreq
