#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "betafreq/ball.hpp"
#include "betafreq/polynomial.hpp"
#include "betafreq/rational.hpp"

namespace betafreq {

/// The field Q(beta) for beta the unique simple root of an integer polynomial
/// inside a sign-change bracket with lo >= 0.
///
/// Degree-1 polynomials give plain rational arithmetic through the same
/// interface. Comparison termination presumes the polynomial is irreducible
/// over Q (true for every pseudo-golden polynomial); reducible inputs hit a
/// resultant-based separation cap and raise PrecisionExhausted instead of
/// looping.
class NumberField {
public:
  static std::shared_ptr<const NumberField> make(IntPolynomial poly, RootBracket bracket);

  int degree() const { return poly_.degree(); }
  const IntPolynomial& poly() const { return poly_; }
  bool same_as(const NumberField& o) const;

  // exact root for degree-1 fields, nullopt otherwise
  const std::optional<Rational>& rational_root() const { return rational_root_; }

  // bracket refined to width <= 2^-bits (cached, monotone)
  RootBracket refined_bracket(long bits) const;
  Ball root_enclosure(mpfr_prec_t prec) const;
  double root_double() const;  // relative error <= 2^-52

  // t^(degree+j) reduced below degree, for j = 0 .. degree-2
  const std::vector<std::vector<Rational>>& reduction_rows() const { return reduction_rows_; }

  // mantissa/exponent approximations of beta^i, i = 0..degree-1, with
  // relative error <= 2^-48 (used by the sign screen)
  struct PowApprox {
    double mant;
    long exp;
  };
  const std::vector<PowApprox>& power_approx() const { return pow_approx_; }

private:
  NumberField(IntPolynomial poly, RootBracket bracket);

  IntPolynomial poly_;
  RootBracket original_;
  std::optional<Rational> rational_root_;
  std::vector<std::vector<Rational>> reduction_rows_;
  std::vector<PowApprox> pow_approx_;
  double root_double_ = 0;

  mutable std::mutex mu_;
  mutable RootBracket current_;
  mutable long current_bits_ = 0;
  mutable std::optional<Ball> cached_ball_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Certified sign of sum_i num[i] * beta^i: fast float screen, then exact
// rational interval refinement. Returns 0 only for the exact zero vector.
int field_sign(const NumberField& field, const std::vector<Int>& num);
// Screen only: nullopt when the margin is too small to certify.
std::optional<int> field_sign_screen(const NumberField& field, const Int* num, int count);

// One addend of a linear form over beta powers: coeff * scale * beta^power.
// Term lists let the orbit kernels screen signs of differences without
// forming the exact difference vectors.
struct SignTerm {
  const Int* coeff;
  int power;
  long scale;
};
// value and magnitude-sum of the form, as (double, base-2 exponent)
struct TermEstimate {
  double value;
  double magnitude;
  long exp2;
  bool all_zero;
};
TermEstimate field_terms_estimate(const NumberField& field, const SignTerm* terms, int n);
std::optional<int> field_sign_screen_terms(const NumberField& field, const SignTerm* terms, int n);

/// Element of Q(beta): (sum_i num[i] * beta^i) / den, den > 0, normalized so
/// that gcd(num..., den) = 1. Immutable value type, exact arithmetic.
class FieldElement {
public:
  FieldElement() = default;  // detached zero; usable only after assignment

  static FieldElement zero(FieldPtr field);
  static FieldElement one(FieldPtr field);
  static FieldElement from_rational(FieldPtr field, const Rational& q);
  static FieldElement generator(FieldPtr field);  // beta itself
  static FieldElement from_raw(FieldPtr field, std::vector<Int> num, Int den);

  const FieldPtr& field() const { return field_; }
  const std::vector<Int>& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const;
  bool is_rational() const;
  std::optional<Rational> as_rational() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement scaled(const Rational& q) const;      // exact scalar multiply
  FieldElement scalar_div(const Rational& q) const;  // exact scalar divide
  FieldElement inverse() const;                      // extended Euclid mod poly
  FieldElement pow(unsigned n) const;

  int sign() const;                       // exact
  int compare(const FieldElement& o) const;  // -1, 0, 1; exact
  bool operator==(const FieldElement& o) const;
  bool operator<(const FieldElement& o) const { return compare(o) < 0; }
  bool operator<=(const FieldElement& o) const { return compare(o) <= 0; }
  bool operator>(const FieldElement& o) const { return compare(o) > 0; }
  bool operator>=(const FieldElement& o) const { return compare(o) >= 0; }

  Ball to_ball(mpfr_prec_t prec) const;
  double to_double() const;
  std::string str() const;

private:
  FieldPtr field_;
  std::vector<Int> num_;
  Int den_ = 1;

  void normalize();
  static void check_same_field(const FieldElement& a, const FieldElement& b);
};

Ordering certified_compare(const FieldElement& a, const FieldElement& b);

} // namespace betafreq
