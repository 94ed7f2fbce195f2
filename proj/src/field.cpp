#include "betafreq/field.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <cmath>
#include <sstream>

#include "betafreq/errors.hpp"

namespace betafreq {

// ---------------------------------------------------------------------------
// NumberField

namespace {
IntPolynomial positive_leading(IntPolynomial p) {
  if (p.leading() > 0) return p;
  std::vector<Int> c = p.coeffs();
  for (auto& x : c) x = -x;
  return IntPolynomial(std::move(c));
}
} // namespace

NumberField::NumberField(IntPolynomial poly, RootBracket bracket)
    : poly_(positive_leading(std::move(poly))), original_(bracket), current_(bracket) {
  if (poly_.degree() < 1) throw InvalidSpec("field polynomial must have degree >= 1");
  if (poly_.degree() > 12) throw InvalidSpec("field degree capped at 12");
  if (bracket.lo < 0) throw InvalidSpec("field root bracket must satisfy lo >= 0");
  const int d = poly_.degree();
  if (d == 1) {
    Rational r(-poly_.coeffs()[0], poly_.coeffs()[1]);
    r.canonicalize();
    rational_root_ = r;
    if (r < bracket.lo || r > bracket.hi)
      throw NoRootInBracket("degree-1 root outside bracket");
    current_ = {r, r};
    current_bits_ = 1L << 30;
  } else {
    // strict sign change wanted; endpoint roots are rejected here
    if (poly_.sign_at(bracket.lo) * poly_.sign_at(bracket.hi) >= 0)
      throw NoRootInBracket(poly_.str() + " on [" + bracket.lo.get_str() + ", " +
                            bracket.hi.get_str() + "]");
  }
  // rows for t^(d+j), j = 0..d-2
  std::vector<Rational> row(d);
  for (int i = 0; i < d; ++i) {
    row[i] = Rational(-poly_.coeffs()[i], poly_.coeffs()[d]);
    row[i].canonicalize();
  }
  reduction_rows_.push_back(row);
  for (int j = 1; j <= d - 2; ++j) {
    std::vector<Rational> next(d, Rational(0));
    const std::vector<Rational>& prev = reduction_rows_.back();
    // multiply by t and fold the overflowing coefficient
    for (int i = 0; i + 1 < d; ++i) next[i + 1] = prev[i];
    for (int i = 0; i < d; ++i) next[i] += prev[d - 1] * reduction_rows_[0][i];
    reduction_rows_.push_back(std::move(next));
  }
}

std::shared_ptr<const NumberField> NumberField::make(IntPolynomial poly, RootBracket bracket) {
  auto f = std::shared_ptr<NumberField>(new NumberField(std::move(poly), std::move(bracket)));
  // certified double of the root, then mantissa/exponent powers for the screen
  Ball root = f->root_enclosure(96);
  f->root_double_ = root.mid_double();
  const int d = f->degree();
  f->pow_approx_.resize(d);
  double m = 0.5;
  long e = 1;  // 1 = 0.5 * 2^1
  for (int i = 0; i < d; ++i) {
    f->pow_approx_[i] = {m, e};
    m *= f->root_double_;
    while (m >= 1.0) {
      m *= 0.5;
      ++e;
    }
    while (m < 0.5) {
      m *= 2.0;
      --e;
    }
  }
  return f;
}

bool NumberField::same_as(const NumberField& o) const {
  if (!(poly_ == o.poly_)) return false;
  // same polynomial: same root iff the original brackets overlap
  return !(original_.hi < o.original_.lo || o.original_.hi < original_.lo);
}

RootBracket NumberField::refined_bracket(long bits) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (current_bits_ >= bits) return current_;
  Int den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  Rational width(1, den);
  current_ = refine_root_bracket(poly_, current_, width);
  current_bits_ = bits;
  return current_;
}

Ball NumberField::root_enclosure(mpfr_prec_t prec) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (cached_ball_ && cached_ball_->precision_bits() >= prec) return *cached_ball_;
  }
  RootBracket br = refined_bracket(prec + 4);
  Ball b = Ball::from_interval(br.lo, br.hi, prec);
  std::lock_guard<std::mutex> lock(mu_);
  if (!cached_ball_ || cached_ball_->precision_bits() < prec) cached_ball_ = b;
  return b;
}

double NumberField::root_double() const { return root_double_; }

// ---------------------------------------------------------------------------
// certified sign

TermEstimate field_terms_estimate(const NumberField& field, const SignTerm* terms, int n) {
  const auto& pows = field.power_approx();
  constexpr int kMax = 40;
  assert(n <= kMax);
  double tm[kMax];
  long te[kMax];
  long emax = LONG_MIN;
  for (int i = 0; i < n; ++i) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, terms[i].coeff->get_mpz_t());
    m *= static_cast<double>(terms[i].scale);
    if (m == 0.0) {
      te[i] = LONG_MIN;
      continue;
    }
    tm[i] = m * pows[terms[i].power].mant;
    te[i] = e + pows[terms[i].power].exp;
    int adj = 0;
    double a = std::frexp(tm[i], &adj);  // keep mantissa in [0.5, 1)
    tm[i] = a;
    te[i] += adj;
    if (te[i] > emax) emax = te[i];
  }
  if (emax == LONG_MIN) return {0.0, 0.0, 0, true};
  double sum = 0, mag = 0;
  int dropped = 0;
  for (int i = 0; i < n; ++i) {
    if (te[i] == LONG_MIN) continue;
    long shift = te[i] - emax;
    if (shift < -200) {
      ++dropped;
      continue;
    }
    double scaled = std::ldexp(tm[i], static_cast<int>(shift));
    sum += scaled;
    mag += std::abs(scaled);
  }
  // fold dropped terms (each <= 2^-200 relative to 2^emax) into the magnitude
  mag += dropped * 0x1p-190;
  return {sum, mag, emax, false};
}

std::optional<int> field_sign_screen_terms(const NumberField& field, const SignTerm* terms, int n) {
  TermEstimate est = field_terms_estimate(field, terms, n);
  if (est.all_zero) return 0;
  // per-term relative error <= 2^-46 (mpz top bits, certified power
  // approximations, scale products, double roundings); 2^-40 margin
  double margin = est.magnitude * 0x1p-40 + n * 0x1p-185;
  if (est.value > margin) return 1;
  if (est.value < -margin) return -1;
  return std::nullopt;
}

std::optional<int> field_sign_screen(const NumberField& field, const Int* num, int count) {
  SignTerm terms[16];
  assert(count <= 16);
  for (int i = 0; i < count; ++i) terms[i] = {&num[i], i, 1};
  return field_sign_screen_terms(field, terms, count);
}

namespace {

// Coarse bit bound so a reducible polynomial cannot send the refinement loop
// spinning forever: |Res(p, T)| >= 1 for T nonzero of smaller degree when p is
// irreducible, giving |T(beta)| >= 2^-cap.
long separation_cap_bits(const NumberField& field, const std::vector<Int>& num) {
  const int d = field.degree();
  size_t max_bits = 1;
  for (const auto& n : num)
    if (n != 0) max_bits = std::max(max_bits, mpz_sizeinbase(n.get_mpz_t(), 2));
  Rational bound = field.poly().root_magnitude_bound();
  double log2_r = std::max(0.0, std::log2(std::abs(bound.get_d())));
  size_t lc_bits = mpz_sizeinbase(field.poly().leading().get_mpz_t(), 2);
  double cap = (d - 1) * (std::log2(double(d) + 1) + double(max_bits) + (d - 1) * log2_r +
                          double(lc_bits)) +
               128;
  return static_cast<long>(cap);
}

// exact interval evaluation of sum num[i] x^i over [lo, hi], 0 <= lo <= hi
std::pair<Rational, Rational> interval_eval(const std::vector<Int>& num, const Rational& lo,
                                            const Rational& hi) {
  Rational slo(0), shi(0);
  Rational plo(1), phi(1);
  for (size_t i = 0; i < num.size(); ++i) {
    if (num[i] > 0) {
      slo += plo * num[i];
      shi += phi * num[i];
    } else if (num[i] < 0) {
      slo += phi * num[i];
      shi += plo * num[i];
    }
    plo *= lo;
    phi *= hi;
  }
  return {slo, shi};
}

} // namespace

int field_sign(const NumberField& field, const std::vector<Int>& num) {
  if (field.degree() == 1) {
    for (size_t i = 1; i < num.size(); ++i) assert(num[i] == 0);
    return sgn(num[0]);
  }
  if (auto s = field_sign_screen(field, num.data(), static_cast<int>(num.size()))) return *s;
  bool all_zero = true;
  for (const auto& n : num)
    if (n != 0) all_zero = false;
  if (all_zero) return 0;
  long cap = separation_cap_bits(field, num);
  for (long bits = 128; bits <= cap; bits *= 2) {
    RootBracket br = field.refined_bracket(bits);
    auto [slo, shi] = interval_eval(num, br.lo, br.hi);
    if (sgn(slo) > 0) return 1;
    if (sgn(shi) < 0) return -1;
  }
  // final attempt exactly at the cap
  RootBracket br = field.refined_bracket(cap);
  auto [slo, shi] = interval_eval(num, br.lo, br.hi);
  if (sgn(slo) > 0) return 1;
  if (sgn(shi) < 0) return -1;
  throw PrecisionExhausted("field sign undecided past the separation cap (is the polynomial irreducible?)");
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement FieldElement::zero(FieldPtr field) {
  return from_raw(std::move(field), {}, 1);
}

FieldElement FieldElement::one(FieldPtr field) {
  std::vector<Int> n(field->degree(), 0);
  n[0] = 1;
  return from_raw(std::move(field), std::move(n), 1);
}

FieldElement FieldElement::from_rational(FieldPtr field, const Rational& q) {
  std::vector<Int> n(field->degree(), 0);
  n[0] = q.get_num();
  return from_raw(std::move(field), std::move(n), q.get_den());
}

FieldElement FieldElement::generator(FieldPtr field) {
  if (field->degree() == 1) return from_rational(field, *field->rational_root());
  std::vector<Int> n(field->degree(), 0);
  n[1] = 1;
  return from_raw(std::move(field), std::move(n), 1);
}

FieldElement FieldElement::from_raw(FieldPtr field, std::vector<Int> num, Int den) {
  if (den == 0) throw InvalidSpec("field element with zero denominator");
  FieldElement e;
  e.field_ = std::move(field);
  num.resize(e.field_->degree(), Int(0));
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  e.normalize();
  return e;
}

void FieldElement::normalize() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& n : num_) n = -n;
  }
  Int g = den_;
  for (const auto& n : num_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    for (auto& n : num_) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
  }
}

void FieldElement::check_same_field(const FieldElement& a, const FieldElement& b) {
  if (!a.field_ || !b.field_) throw MixedFields("operation on a detached field element");
  if (a.field_ == b.field_) return;
  if (!a.field_->same_as(*b.field_))
    throw MixedFields(a.field_->poly().str() + " vs " + b.field_->poly().str());
}

bool FieldElement::is_zero() const {
  for (const auto& n : num_)
    if (n != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

std::optional<Rational> FieldElement::as_rational() const {
  if (!is_rational()) return std::nullopt;
  if (num_.empty()) return Rational(0);
  Rational q(num_[0], den_);
  q.canonicalize();
  return q;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldElement::check_same_field(a, b);
  std::vector<Int> n(a.num_.size());
  for (size_t i = 0; i < n.size(); ++i) n[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
  return FieldElement::from_raw(a.field_, std::move(n), a.den_ * b.den_);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  FieldElement::check_same_field(a, b);
  std::vector<Int> n(a.num_.size());
  for (size_t i = 0; i < n.size(); ++i) n[i] = a.num_[i] * b.den_ - b.num_[i] * a.den_;
  return FieldElement::from_raw(a.field_, std::move(n), a.den_ * b.den_);
}

FieldElement FieldElement::operator-() const {
  std::vector<Int> n(num_.size());
  for (size_t i = 0; i < n.size(); ++i) n[i] = -num_[i];
  return from_raw(field_, std::move(n), den_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  FieldElement::check_same_field(a, b);
  const int d = a.field_->degree();
  // polynomial product, then fold coefficients at t^d.. with the reduction rows
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  Rational den(a.den_ * b.den_);
  for (int i = 0; i < d; ++i) {
    if (a.num_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.num_[j] == 0) continue;
      prod[i + j] += Rational(a.num_[i] * b.num_[j]);
    }
  }
  const auto& rows = a.field_->reduction_rows();
  for (int k = 2 * d - 2; k >= d; --k) {
    if (prod[k] == 0) continue;
    Rational c = prod[k];
    prod[k] = 0;
    const auto& row = rows[k - d];
    for (int i = 0; i < d; ++i) prod[i] += c * row[i];
  }
  // recombine to a shared denominator
  Int common(1);
  for (int i = 0; i < d; ++i) {
    Rational q = prod[i];
    q.canonicalize();
    prod[i] = q;
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den().get_mpz_t());
  }
  std::vector<Int> n(d);
  for (int i = 0; i < d; ++i) {
    Int scale;
    mpz_divexact(scale.get_mpz_t(), common.get_mpz_t(), prod[i].get_den().get_mpz_t());
    n[i] = prod[i].get_num() * scale;
  }
  return FieldElement::from_raw(a.field_, std::move(n), common * a.den_ * b.den_);
}

FieldElement FieldElement::scaled(const Rational& q) const {
  std::vector<Int> n(num_.size());
  for (size_t i = 0; i < n.size(); ++i) n[i] = num_[i] * q.get_num();
  return from_raw(field_, std::move(n), den_ * q.get_den());
}

FieldElement FieldElement::scalar_div(const Rational& q) const {
  if (q == 0) throw InvalidSpec("scalar division by zero");
  Rational inv(q.get_den(), q.get_num());
  inv.canonicalize();
  return scaled(inv);
}

namespace {

using QPoly = std::vector<Rational>;  // coefficient list, may carry leading zeros

int qdeg(const QPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

// a -= q * t^shift * b
void submul(QPoly& a, const Rational& q, int shift, const QPoly& b) {
  for (int i = 0; i <= qdeg(b); ++i) a[i + shift] -= q * b[i];
}

} // namespace

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw InvalidSpec("inverse of zero");
  if (auto q = as_rational()) return from_rational(field_, Rational(q->get_den(), q->get_num()));
  // extended Euclid in Q[t]: u*poly + v*this = gcd (= constant for irreducible poly)
  const int d = field_->degree();
  QPoly r0(d + 1), r1(d + 1, Rational(0));
  for (int i = 0; i <= d; ++i) r0[i] = Rational(field_->poly().coeffs()[i]);
  for (int i = 0; i < d; ++i) r1[i] = Rational(num_[i], den_), r1[i].canonicalize();
  QPoly v0(d + 1, Rational(0)), v1(d + 1, Rational(0));
  v1[0] = 1;  // cofactor of `this`
  while (qdeg(r1) > 0) {
    while (qdeg(r0) >= qdeg(r1)) {
      int shift = qdeg(r0) - qdeg(r1);
      Rational q = r0[qdeg(r0)] / r1[qdeg(r1)];
      submul(r0, q, shift, r1);
      submul(v0, q, shift, v1);
    }
    std::swap(r0, r1);
    std::swap(v0, v1);
  }
  if (qdeg(r1) != 0)
    throw PrecisionExhausted("element not invertible (polynomial not irreducible?)");
  Rational c = r1[0];
  // inverse = v1 / c
  QPoly inv = v1;
  Int common(1);
  for (auto& q : inv) {
    q /= c;
    q.canonicalize();
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den().get_mpz_t());
  }
  std::vector<Int> n(d, 0);
  for (int i = 0; i < d; ++i) {
    Int scale;
    mpz_divexact(scale.get_mpz_t(), common.get_mpz_t(), inv[i].get_den().get_mpz_t());
    n[i] = inv[i].get_num() * scale;
  }
  return from_raw(field_, std::move(n), common);
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::pow(unsigned n) const {
  FieldElement acc = one(field_);
  FieldElement base = *this;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

int FieldElement::sign() const {
  // denominator is positive, so the numerator vector decides
  return field_sign(*field_, num_);
}

int FieldElement::compare(const FieldElement& o) const {
  check_same_field(*this, o);
  if (num_ == o.num_ && den_ == o.den_) return 0;
  return (*this - o).sign();
}

bool FieldElement::operator==(const FieldElement& o) const {
  // normalized representation is canonical
  return field_ && o.field_ && field_->same_as(*o.field_) && num_ == o.num_ && den_ == o.den_;
}

Ball FieldElement::to_ball(mpfr_prec_t prec) const {
  if (auto q = as_rational()) return Ball::from_rational(*q, prec);
  Ball beta = field_->root_enclosure(prec + 32);
  Rational top(num_.back(), den_);
  top.canonicalize();
  Ball acc = Ball::from_rational(top, prec + 32);
  for (int i = static_cast<int>(num_.size()) - 2; i >= 0; --i) {
    Rational c(num_[i], den_);
    c.canonicalize();
    acc = acc * beta + Ball::from_rational(c, prec + 32);
  }
  return acc.rounded(prec);
}

double FieldElement::to_double() const { return to_ball(64).mid_double(); }

std::string FieldElement::str() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    if (!first) os << (num_[i] > 0 ? " + " : " - ");
    else if (num_[i] < 0) os << "-";
    Int a = abs(num_[i]);
    os << a.get_str();
    if (i >= 1) os << "*b";
    if (i > 1) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  os << ")";
  if (den_ != 1) os << "/" << den_.get_str();
  return os.str();
}

Ordering certified_compare(const FieldElement& a, const FieldElement& b) {
  int c = a.compare(b);
  return c < 0 ? Ordering::less : c > 0 ? Ordering::greater : Ordering::equal;
}

} // namespace betafreq
