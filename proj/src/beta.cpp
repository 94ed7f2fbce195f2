#include "betafreq/beta.hpp"

#include <cmath>
#include <sstream>

#include "betafreq/errors.hpp"

namespace betafreq {

IntPolynomial pseudo_golden_poly(int m) {
  if (m < 2) throw InvalidIndex("pseudo-golden index must be >= 2, got " + std::to_string(m));
  std::vector<Int> c(m + 1, Int(-1));
  c[m] = 1;
  return IntPolynomial(std::move(c));
}

std::optional<BetaSpec> parse_beta_spec(const std::string& s) {
  if (s.rfind("pg:", 0) == 0) {
    try {
      size_t used = 0;
      int m = std::stoi(s.substr(3), &used);
      if (used != s.size() - 3) return std::nullopt;
      return BetaSpec(PseudoGoldenSpec{m});
    } catch (...) {
      return std::nullopt;
    }
  }
  if (s.rfind("poly:", 0) == 0) {
    auto second = s.find(':', 5);
    if (second == std::string::npos) return std::nullopt;
    auto poly = IntPolynomial::parse(s.substr(5, second - 5));
    if (!poly) return std::nullopt;
    std::string br = s.substr(second + 1);
    auto comma = br.find(',');
    if (comma == std::string::npos) return std::nullopt;
    auto lo = parse_rational(br.substr(0, comma));
    auto hi = parse_rational(br.substr(comma + 1));
    if (!lo || !hi) return std::nullopt;
    return BetaSpec(PolynomialSpec{std::move(*poly), RootBracket{*lo, *hi}});
  }
  auto q = parse_rational(s);
  if (!q) return std::nullopt;
  return BetaSpec(RationalSpec{*q});
}

std::string spec_string(const BetaSpec& spec) {
  if (const auto* r = std::get_if<RationalSpec>(&spec)) return r->value.get_str();
  if (const auto* p = std::get_if<PseudoGoldenSpec>(&spec)) return "pg:" + std::to_string(p->m);
  const auto& ps = std::get<PolynomialSpec>(spec);
  std::ostringstream os;
  os << "poly:";
  for (size_t i = 0; i < ps.poly.coeffs().size(); ++i) {
    if (i) os << ",";
    os << ps.poly.coeffs()[i].get_str();
  }
  os << ":" << ps.bracket.lo.get_str() << "," << ps.bracket.hi.get_str();
  return os.str();
}

namespace {

// certified floor of the field generator: the integer k with k <= beta < k+1
long certified_floor(const NumberField& field) {
  if (field.rational_root()) return floor_of(*field.rational_root()).get_si();
  // refine until the bracket pins a single integer window
  for (long bits = 8;; bits *= 2) {
    RootBracket br = field.refined_bracket(bits);
    Int flo = floor_of(br.lo);
    Int fhi = floor_of(br.hi);
    if (flo == fhi) return flo.get_si();
    // beta might sit exactly on an integer; test it
    if (fhi == flo + 1 && field.poly().sign_at(Rational(fhi)) == 0) return fhi.get_si();
    if (bits > 1 << 20) throw InvalidSpec("cannot certify floor(beta)");
  }
}

} // namespace

Beta Beta::make(const BetaSpec& spec) {
  Beta b;
  b.spec_ = spec;
  if (const auto* r = std::get_if<RationalSpec>(&spec)) {
    if (r->value <= 1) throw InvalidSpec("beta must exceed 1, got " + r->value.get_str());
    std::vector<Int> c{-r->value.get_num(), r->value.get_den()};
    b.field_ = NumberField::make(IntPolynomial(std::move(c)),
                                 RootBracket{Rational(0), r->value + 1});
  } else if (const auto* p = std::get_if<PseudoGoldenSpec>(&spec)) {
    b.field_ = NumberField::make(pseudo_golden_poly(p->m), RootBracket{Rational(1), Rational(2)});
    b.pg_m_ = p->m;
  } else {
    const auto& ps = std::get<PolynomialSpec>(spec);
    b.field_ = NumberField::make(ps.poly, ps.bracket);
  }
  b.floor_ = certified_floor(*b.field_);
  if (b.floor_ < 1) throw InvalidSpec("beta must exceed 1");
  const auto& rat = b.field_->rational_root();
  b.is_integer_ = rat && betafreq::is_integer(*rat);
  if (b.is_integer_ && rat->get_num() == 1) throw InvalidSpec("beta must exceed 1");
  b.ceil_ = b.is_integer_ ? b.floor_ : b.floor_ + 1;
  b.max_digit_ = b.is_integer_ ? b.floor_ - 1 : b.floor_;
  if (b.is_integer_) {
    b.hi_ = FieldElement::one(b.field_);
  } else {
    // floor(beta) / (beta - 1)
    FieldElement beta = FieldElement::generator(b.field_);
    FieldElement denom = beta - FieldElement::from_rational(b.field_, Rational(1));
    b.hi_ = FieldElement::from_rational(b.field_, Rational(b.floor_)) / denom;
  }
  return b;
}

Beta Beta::make(const std::string& spec_str) {
  auto spec = parse_beta_spec(spec_str);
  if (!spec) throw InvalidSpec("cannot parse '" + spec_str + "'");
  return make(*spec);
}

FieldElement Beta::value() const { return FieldElement::generator(field_); }

FieldElement Beta::interval_hi() const { return hi_; }

Ball Beta::value_ball(mpfr_prec_t prec) const { return field_->root_enclosure(prec); }

double Beta::log2_upper() const {
  // beta < floor + 1 always; a hair above log2 of the double suffices
  double d = std::log2(field_->root_double());
  return d * (1 + 1e-12) + 1e-12;
}

} // namespace betafreq
