#pragma once

#include <mpfr.h>

#include <string>

#include "betafreq/rational.hpp"

namespace betafreq {

// Result of a certified comparison. less/greater are guaranteed; ambiguous
// means the enclosures overlap and the caller must refine or restart.
enum class Ordering { less, equal, greater, ambiguous };

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
    default: return "ambiguous";
  }
}

/// Midpoint-radius enclosure of a real number.
///
/// The represented value is guaranteed to lie in [mid - rad, mid + rad].
/// Every operation produces an enclosure of the exact result over all members
/// of the operand enclosures (midpoint rounding is absorbed into the radius,
/// radius arithmetic rounds up). Radii are kept at a small fixed precision.
class Ball {
public:
  explicit Ball(mpfr_prec_t precision_bits = 64);
  Ball(const Ball& o);
  Ball(Ball&& o) noexcept;
  Ball& operator=(const Ball& o);
  Ball& operator=(Ball&& o) noexcept;
  ~Ball();

  static Ball from_int(long v, mpfr_prec_t prec);
  static Ball from_rational(const Rational& q, mpfr_prec_t prec);
  // Enclosure of the interval [lo, hi].
  static Ball from_interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec);

  mpfr_prec_t precision_bits() const;
  bool is_exact() const;  // radius == 0
  double mid_double() const;
  double rad_double() const;
  // Exact dyadic bounds of the enclosure.
  Rational lower_bound() const;
  Rational upper_bound() const;
  bool contains(const Rational& q) const;
  bool contains_zero() const;

  Ball rounded(mpfr_prec_t prec) const;  // re-round midpoint, widen radius

  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  friend Ball operator/(const Ball& a, const Ball& b);  // throws AmbiguousAtPrecision if b straddles 0
  Ball operator-() const;

  friend Ball operator+(const Ball& a, long k);
  friend Ball operator-(const Ball& a, long k);
  friend Ball operator*(const Ball& a, long k);
  friend Ball operator/(const Ball& a, long k);

  // less/greater only when the enclosures are disjoint, never equal.
  static Ordering compare(const Ball& a, const Ball& b);

  std::string str(int decimal_digits = 20) const;

  mpfr_srcptr mid() const { return mid_; }
  mpfr_srcptr rad() const { return rad_; }

private:
  mpfr_t mid_;
  mpfr_t rad_;
  friend struct BallOps;
};

Ordering certified_compare(const Ball& a, const Ball& b);
Ordering certified_compare(const Rational& a, const Rational& b);

} // namespace betafreq
