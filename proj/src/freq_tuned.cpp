#include "betafreq/freq_tuned.hpp"

#include <sstream>

#include "betafreq/errors.hpp"

namespace betafreq {

namespace {

int require_pseudo_golden(const Beta& beta) {
  auto m = beta.pseudo_golden_m();
  if (!m) throw UnsupportedBase("frequency tuning needs a pseudo-golden base (pg:<m>)");
  return *m;
}

// m beta + beta - 2m
FieldElement tuning_denominator(const Beta& beta, int m) {
  return beta.value().scaled(Rational(m + 1)) - FieldElement::from_rational(beta.field(), Rational(2 * m));
}

} // namespace

Beta pseudo_golden(int m) {
  if (m < 2) throw InvalidIndex("pseudo-golden index must be >= 2, got " + std::to_string(m));
  return Beta::make(BetaSpec(PseudoGoldenSpec{m}));
}

FieldElement freq_radius(const Beta& beta) {
  int m = require_pseudo_golden(beta);
  FieldElement two = FieldElement::from_rational(beta.field(), Rational(2));
  FieldElement c = (two - beta.value()).scaled(Rational(m - 1)) /
                   tuning_denominator(beta, m).scaled(Rational(2));
  if (c.sign() <= 0) throw IdentityViolated("frequency radius must be positive");
  return c;
}

FieldElement freq_of_window_lo(const Beta& beta, const FieldElement& x) {
  int m = require_pseudo_golden(beta);
  FieldElement one = FieldElement::one(beta.field());
  return (beta.value() - one) * (one - x.scaled(Rational(m - 1))) / tuning_denominator(beta, m);
}

TunedParams params_from_window_lo(const Beta& beta, const FieldElement& b) {
  int m = require_pseudo_golden(beta);
  FieldElement one = FieldElement::one(beta.field());
  FieldElement top = beta.interval_hi() - one;  // 1/(beta-1) - 1
  if (b.sign() < 0 || (b - top).sign() > 0)
    throw FrequencyOutOfRange("window base outside [0, 1/(beta-1)-1]");
  TunedParams tp;
  tp.m = m;
  tp.beta = beta;
  tp.p_exact = freq_of_window_lo(beta, b);
  tp.target_freq = tp.p_exact.as_rational();
  tp.freq_radius = freq_radius(beta);
  tp.window_lo = b;
  tp.cut = (b + one) * beta.value().inverse();
  // cut in (b, b+1): the two-branch map is well formed
  if ((tp.cut - b).sign() <= 0 || (b + one - tp.cut).sign() <= 0)
    throw IdentityViolated("cut point escaped (b, b+1)");
  return tp;
}

TunedParams target_to_cut(const Beta& beta, const Rational& p) {
  int m = require_pseudo_golden(beta);
  FieldElement c = freq_radius(beta);
  FieldElement p_el = FieldElement::from_rational(beta.field(), p);
  FieldElement half = FieldElement::from_rational(beta.field(), Rational(1, 2));
  if ((p_el - (half - c)).sign() < 0 || (p_el - (half + c)).sign() > 0) {
    std::ostringstream os;
    os << "p = " << p.get_str() << " outside [1/2-c, 1/2+c], c ~= " << freq_radius(beta).to_double();
    throw FrequencyOutOfRange(os.str());
  }
  // b = (1 - p (m beta + beta - 2m)/(beta - 1)) / (m - 1)
  FieldElement one = FieldElement::one(beta.field());
  FieldElement b =
      (one - p_el * tuning_denominator(beta, m) / (beta.value() - one)).scalar_div(Rational(m - 1));
  TunedParams tp = params_from_window_lo(beta, b);
  tp.target_freq = p;
  if (!(tp.p_exact == p_el)) throw IdentityViolated("f(b) != p after inversion");
  return tp;
}

DigitSeq tuned_expand(const TunedParams& params, const FieldElement& x, size_t n,
                      const GenOptions& opt) {
  const Beta& beta = params.beta;
  require_in_interval(beta, x);
  FieldElement b1 = params.window_lo + FieldElement::one(beta.field());
  return run_stream(beta, x, n, opt, [&](Orbit& orb, DigitSeq& out) {
    // compare beta*y against beta*cut = b+1: digit 1 on [cut, hi]
    int h_b1 = orb.register_constant(b1);
    orb.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      orb.mul_beta();
      long digit = orb.sign_vs(h_b1) >= 0 ? 1 : 0;
      orb.sub_digit(digit);
      out.digits.push_back(static_cast<uint8_t>(digit));
    }
  });
}

OrbitIdentityReport orbit_identities(const TunedParams& params) {
  const Beta& beta = params.beta;
  const int m = params.m;
  const FieldPtr& K = beta.field();
  FieldElement one = FieldElement::one(K);
  FieldElement b1 = params.window_lo + one;
  OrbitIdentityReport rep;

  auto step = [&](const FieldElement& y) {
    // the actual two-branch map: digit 1 iff y >= cut
    int digit = (y - params.cut).sign() >= 0 ? 1 : 0;
    return y * beta.value() - FieldElement::from_rational(K, Rational(digit));
  };
  auto note = [&](bool ok, const std::string& what) {
    rep.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) {
      rep.ok = false;
      throw IdentityViolated(what);
    }
  };

  rep.orbit_lo.push_back(params.window_lo);
  rep.orbit_hi.push_back(b1);
  FieldElement beta_pow = one;
  FieldElement geom = FieldElement::zero(K);  // beta^(k-1) + ... + 1
  for (int k = 1; k <= m; ++k) {
    geom = geom + beta_pow;
    beta_pow = beta_pow * beta.value();
    rep.orbit_lo.push_back(step(rep.orbit_lo.back()));
    rep.orbit_hi.push_back(step(rep.orbit_hi.back()));
    const FieldElement& tb = rep.orbit_lo.back();
    const FieldElement& tb1 = rep.orbit_hi.back();
    if (k < m) {
      note(tb == beta_pow * params.window_lo, "T^" + std::to_string(k) + "(b) = beta^k b");
      note((tb - params.cut).sign() < 0, "T^" + std::to_string(k) + "(b) < cut");
      note((params.cut - tb1).sign() <= 0, "cut <= T^" + std::to_string(k) + "(b+1)");
      note(tb1 == beta_pow * params.window_lo + beta_pow - geom,
           "T^" + std::to_string(k) + "(b+1) closed form");
    } else {
      note(tb == tb1, "T^m(b) = T^m(b+1), orbits merge");
    }
  }
  return rep;
}

} // namespace betafreq
