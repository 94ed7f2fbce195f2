#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "betafreq/field.hpp"

namespace betafreq {

// How the base was specified. Every form yields exact field arithmetic:
// rational literals are degree-1 fields, pseudo-golden and polynomial specs
// are algebraic fields over the certified root.
struct PseudoGoldenSpec {
  int m;  // beta^m = beta^(m-1) + ... + beta + 1, root in (1,2)
};
struct RationalSpec {
  Rational value;
};
struct PolynomialSpec {
  IntPolynomial poly;
  RootBracket bracket;
};
using BetaSpec = std::variant<RationalSpec, PseudoGoldenSpec, PolynomialSpec>;

// "pg:<m>", a decimal/fraction literal, or "poly:c0,c1,...,cd:<lo>,<hi>"
std::optional<BetaSpec> parse_beta_spec(const std::string& s);
std::string spec_string(const BetaSpec& spec);

/// A base beta > 1 with certified floor/ceil, its digit alphabet and the
/// interval I of expandable points: [0, floor(beta)/(beta-1)] for non-integer
/// beta, [0, 1] for integer beta.
class Beta {
public:
  static Beta make(const BetaSpec& spec);
  static Beta make(const std::string& spec_str);  // parse + make

  const BetaSpec& spec() const { return spec_; }
  std::string spec_str() const { return spec_string(spec_); }
  const FieldPtr& field() const { return field_; }

  long floor() const { return floor_; }
  long ceil() const { return ceil_; }
  bool is_integer() const { return is_integer_; }
  long max_digit() const { return max_digit_; }  // alphabet is {0, ..., max_digit}
  std::optional<int> pseudo_golden_m() const { return pg_m_; }

  FieldElement value() const;          // beta as a field element
  FieldElement interval_hi() const;    // right endpoint of I
  Ball value_ball(mpfr_prec_t prec) const;
  double value_double() const { return field_->root_double(); }
  // upper bound on log2(beta), used for precision budgeting
  double log2_upper() const;

private:
  BetaSpec spec_;
  FieldPtr field_;
  long floor_ = 0;
  long ceil_ = 0;
  bool is_integer_ = false;
  long max_digit_ = 0;
  std::optional<int> pg_m_;
  FieldElement hi_;
};

// The pseudo-golden polynomial t^m - t^(m-1) - ... - t - 1.
IntPolynomial pseudo_golden_poly(int m);

} // namespace betafreq
