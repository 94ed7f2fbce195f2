#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betafreq/ball.hpp"
#include "betafreq/rational.hpp"

namespace betafreq {

/// Integer polynomial c[0] + c[1] t + ... + c[d] t^d, leading coefficient nonzero.
class IntPolynomial {
public:
  explicit IntPolynomial(std::vector<Int> coeffs);
  static std::optional<IntPolynomial> parse(const std::string& comma_coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  const Int& leading() const { return coeffs_.back(); }

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const;
  IntPolynomial derivative() const;
  // 1 + max_i |c_i / c_d|, an upper bound for the modulus of every root.
  Rational root_magnitude_bound() const;

  bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }
  std::string str() const;

private:
  std::vector<Int> coeffs_;
};

// Bracket [lo, hi] with a strict sign change: p(lo) * p(hi) < 0.
struct RootBracket {
  Rational lo;
  Rational hi;
};

// Sign-preserving bisection. Halves the bracket until hi - lo <= width, or
// returns a zero-width bracket if an exact rational root is hit. Throws
// NoRootInBracket when the sign test fails at the endpoints, MultipleRoots
// when an exact bisection point is a root of both p and p'.
RootBracket refine_root_bracket(const IntPolynomial& p, RootBracket b, const Rational& width);

// Certified enclosure of the unique simple root of p in the bracket,
// radius <= width. Deterministic for fixed inputs.
Ball isolate_root(const IntPolynomial& p, const RootBracket& bracket, const Rational& width,
                  mpfr_prec_t prec = 256);

} // namespace betafreq
