#include "betafreq/polynomial.hpp"

#include <sstream>

#include "betafreq/errors.hpp"

namespace betafreq {

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty() || (coeffs_.size() == 1 && coeffs_[0] == 0))
    throw InvalidSpec("zero polynomial");
}

std::optional<IntPolynomial> IntPolynomial::parse(const std::string& comma_coeffs) {
  std::vector<Int> cs;
  std::stringstream ss(comma_coeffs);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Int v;
    if (tok.empty() || v.set_str(tok, 10) != 0) return std::nullopt;
    cs.push_back(v);
  }
  if (cs.empty()) return std::nullopt;
  try {
    return IntPolynomial(std::move(cs));
  } catch (const Error&) {
    return std::nullopt;
  }
}

Rational IntPolynomial::eval(const Rational& x) const {
  Rational acc(coeffs_.back());
  for (int i = degree() - 1; i >= 0; --i) acc = acc * x + coeffs_[i];
  return acc;
}

int IntPolynomial::sign_at(const Rational& x) const { return sgn(eval(x)); }

IntPolynomial IntPolynomial::derivative() const {
  if (degree() == 0) throw InvalidSpec("derivative of a constant");
  std::vector<Int> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return IntPolynomial(std::move(d));
}

Rational IntPolynomial::root_magnitude_bound() const {
  Rational m(0);
  for (int i = 0; i < degree(); ++i) {
    Rational r(abs(coeffs_[i]), abs(coeffs_.back()));
    r.canonicalize();
    if (r > m) m = r;
  }
  return m + 1;
}

std::string IntPolynomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
    else if (coeffs_[i] < 0) os << "-";
    Int a = abs(coeffs_[i]);
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

RootBracket refine_root_bracket(const IntPolynomial& p, RootBracket b, const Rational& width) {
  if (b.lo >= b.hi) throw NoRootInBracket("empty bracket for " + p.str());
  int slo = p.sign_at(b.lo);
  int shi = p.sign_at(b.hi);
  if (slo == 0 || shi == 0) {
    // an endpoint is itself a root; callers pass open brackets around the target root
    const Rational& r = slo == 0 ? b.lo : b.hi;
    if (p.derivative().sign_at(r) == 0) throw MultipleRoots("endpoint root of " + p.str());
    return {r, r};
  }
  if (slo == shi)
    throw NoRootInBracket(p.str() + " has equal signs at the bracket endpoints");
  while (b.hi - b.lo > width) {
    Rational mid = (b.lo + b.hi) / 2;
    int sm = p.sign_at(mid);
    if (sm == 0) {
      if (p.derivative().sign_at(mid) == 0) throw MultipleRoots("bisection hit a repeated root");
      return {mid, mid};  // exact rational root
    }
    if (sm == slo) b.lo = mid;
    else b.hi = mid;
  }
  return b;
}

Ball isolate_root(const IntPolynomial& p, const RootBracket& bracket, const Rational& width,
                  mpfr_prec_t prec) {
  if (width <= 0) throw InvalidSpec("isolate_root needs a positive width");
  // bracket of total length <= width gives radius <= width/2 + rounding < width
  RootBracket r = refine_root_bracket(p, bracket, width);
  return Ball::from_interval(r.lo, r.hi, prec);
}

} // namespace betafreq
