#include "betafreq/balanced.hpp"

#include <cmath>

#include "betafreq/errors.hpp"

namespace betafreq {

namespace {

void require_balanced_base(const Beta& beta) {
  if (beta.is_integer()) throw UnsupportedBase("balanced map needs non-integer beta");
  if (beta.floor() < 2) throw UnsupportedBase("balanced map needs beta > 2");
}

} // namespace

CutPoints cut_points(const Beta& beta) {
  require_balanced_base(beta);
  FieldElement hi = beta.interval_hi();
  FieldElement one = FieldElement::one(beta.field());
  FieldElement inv_beta = beta.value().inverse();
  CutPoints cp;
  cp.z.resize(beta.ceil() + 1);
  // z_0 = floor/(2(beta-1)) - 1/2 = (hi - 1)/2
  cp.z[0] = (hi - one).scaled(Rational(1, 2));
  // z_1 = (hi/2) - (floor-1)/(2 beta) = ((hi + 1)/2) / beta, then steps of 1/beta
  cp.z[1] = (hi + one).scaled(Rational(1, 2)) * inv_beta;
  for (long k = 1; k + 1 <= beta.floor(); ++k) cp.z[k + 1] = cp.z[k] + inv_beta;
  cp.z[beta.ceil()] = cp.z[0] + one;
  return cp;
}

DigitSeq balanced_expand(const Beta& beta, const FieldElement& x, size_t n,
                         const GenOptions& opt) {
  require_balanced_base(beta);
  require_in_interval(beta, x);
  const long maxd = beta.max_digit();
  CutPoints cp = cut_points(beta);
  const FieldElement& z0 = cp.z[0];
  const FieldElement& zc = cp.z[beta.ceil()];

  // the endpoints have constant unique expansions and never balance
  if (x.is_zero() || x == beta.interval_hi()) {
    DigitSeq out;
    out.beta = beta;
    out.x = x;
    out.arith = opt.arith;
    out.degenerate_endpoint = true;
    out.digits.assign(n, x.is_zero() ? 0 : static_cast<uint8_t>(maxd));
    return out;
  }

  // entry bound ceil(log_beta(z0/x)) from the spec'd invariant, with slack
  double xa = x.to_double();
  double z0a = z0.to_double();
  double lb = std::log2(beta.value_double());
  size_t entry_cap = SIZE_MAX;  // unverifiable for subnormal starts
  if (xa > 1e-300 && xa < z0a) entry_cap = static_cast<size_t>(std::log2(z0a / xa) / lb) + 4;

  return run_stream(beta, x, n, opt, [&](Orbit& orb, DigitSeq& out) {
    int h_z0 = orb.register_constant(z0);
    int h_zc = orb.register_constant(zc);
    orb.reserve(n);
    // entry phases: multiply into the invariant window [z_0, z_ceil]
    size_t entry = 0;
    if (orb.sign_vs(h_z0) < 0) {
      while (out.digits.size() < n && orb.sign_vs(h_z0) < 0) {
        out.digits.push_back(0);
        orb.mul_beta();
        ++entry;
        if (entry > entry_cap) throw IdentityViolated("entry phase exceeded its log bound");
      }
      if (out.digits.size() < n && orb.sign_vs(h_zc) > 0)
        throw IdentityViolated("entry phase overshot the invariant window");
    } else if (orb.sign_vs(h_zc) > 0) {
      while (out.digits.size() < n && orb.sign_vs(h_zc) > 0) {
        out.digits.push_back(static_cast<uint8_t>(maxd));
        orb.mul_beta();
        orb.sub_digit(maxd);
        ++entry;
        if (orb.sign_vs(h_z0) < 0)
          throw IdentityViolated("entry phase undershot the invariant window");
      }
    }
    out.entry_len = entry;
    // regular phase: digit = clamp(floor(beta*y - z_0), 0, floor(beta))
    while (out.digits.size() < n) {
      orb.mul_beta();
      long k = orb.floor_minus(h_z0, maxd);
      orb.sub_digit(k);
      out.digits.push_back(static_cast<uint8_t>(k));
    }
  });
}

bool mirror_check(const Beta& beta, const FieldElement& x, size_t n, const GenOptions& opt) {
  require_balanced_base(beta);
  CutPoints cp = cut_points(beta);
  const FieldElement& z0 = cp.z[0];
  const FieldElement& zc = cp.z[beta.ceil()];
  if ((x - z0).sign() < 0 || (x - zc).sign() > 0)
    throw OutOfDomain("mirror_check needs x in [z_0, z_ceil]");
  FieldElement mirror = beta.interval_hi() - x;
  const long maxd = beta.max_digit();

  auto digits_hitting = [&](const FieldElement& start) {
    return run_stream(beta, start, n, opt, [&](Orbit& orb, DigitSeq& out) {
      int h_z0 = orb.register_constant(z0);
      orb.reserve(n);
      for (size_t i = 0; i < n; ++i) {
        orb.mul_beta();
        bool hit = false;
        long k = orb.floor_minus(h_z0, maxd, &hit);
        // an exact hit on z_k (k>=1) breaks the symmetry claim
        if (hit && k >= 1)
          throw BoundaryHit("orbit landed on z_" + std::to_string(k) + " at step " +
                            std::to_string(i + 1));
        orb.sub_digit(k);
        out.digits.push_back(static_cast<uint8_t>(k));
      }
    });
  };

  DigitSeq a = digits_hitting(x);
  DigitSeq b = digits_hitting(mirror);
  for (size_t i = 0; i < n; ++i)
    if (a.digits[i] + b.digits[i] != maxd) return false;
  return true;
}

} // namespace betafreq
