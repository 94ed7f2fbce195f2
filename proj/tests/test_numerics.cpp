#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "betafreq/errors.hpp"
#include "betafreq/numerics.hpp"

using namespace betafreq;

namespace {

// Independent root oracle: plain rational bisection, deliberately separate
// from the library path it checks.
Rational oracle_root(const std::vector<long>& coeffs, Rational lo, Rational hi, int iters) {
  auto eval = [&](const Rational& x) {
    Rational acc(coeffs.back());
    for (int i = static_cast<int>(coeffs.size()) - 2; i >= 0; --i) acc = acc * x + coeffs[i];
    return acc;
  };
  REQUIRE(sgn(eval(lo)) * sgn(eval(hi)) < 0);
  int slo = sgn(eval(lo));
  for (int i = 0; i < iters; ++i) {
    Rational mid = (lo + hi) / 2;
    int sm = sgn(eval(mid));
    if (sm == 0) return mid;
    (sm == slo ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

FieldPtr golden_field() {
  return NumberField::make(IntPolynomial({Int(-1), Int(-1), Int(1)}), {Rational(1), Rational(2)});
}

} // namespace

TEST_CASE("isolate_root encloses the golden ratio") {
  IntPolynomial p({Int(-1), Int(-1), Int(1)});  // t^2 - t - 1
  Rational width = *parse_rational("1e-12");
  Ball root = isolate_root(p, {Rational(1), Rational(2)}, width);
  Rational truth = oracle_root({-1, -1, 1}, 1, 2, 80);
  CHECK(root.contains(truth));
  CHECK(root.rad_double() <= 1e-12);
  CHECK(root.mid_double() == doctest::Approx(1.6180339887498949).epsilon(1e-12));
}

TEST_CASE("isolate_root encloses the m=3 pseudo-golden root") {
  IntPolynomial p({Int(-1), Int(-1), Int(-1), Int(1)});  // t^3 - t^2 - t - 1
  Ball root = isolate_root(p, {Rational(1), Rational(2)}, *parse_rational("1e-12"));
  Rational truth = oracle_root({-1, -1, -1, 1}, 1, 2, 80);
  CHECK(root.contains(truth));
  CHECK(root.rad_double() <= 1e-12);
  CHECK(root.mid_double() == doctest::Approx(1.8392867552141611).epsilon(1e-12));
}

TEST_CASE("isolate_root rejects sign-test failures") {
  IntPolynomial p({Int(-1), Int(-1), Int(1)});
  CHECK_THROWS_AS(isolate_root(p, {Rational(2), Rational(3)}, Rational(1, 1000)),
                  NoRootInBracket);
}

TEST_CASE("isolate_root flags repeated roots hit by bisection") {
  // (t-1)^3 = -1 + 3t - 3t^2 + t^3, bracket [0, 2] bisects exactly onto 1
  IntPolynomial p({Int(-1), Int(3), Int(-3), Int(1)});
  CHECK_THROWS_AS(isolate_root(p, {Rational(0), Rational(2)}, Rational(1, 1 << 20)),
                  MultipleRoots);
}

TEST_CASE("monotone refinement: smaller widths give nested enclosures") {
  IntPolynomial p({Int(-1), Int(-1), Int(1)});
  Rational w = Rational(1, 1000);
  Ball prev = isolate_root(p, {Rational(1), Rational(2)}, w);
  for (int i = 0; i < 4; ++i) {
    w /= 1000;
    Ball next = isolate_root(p, {Rational(1), Rational(2)}, w);
    CHECK(prev.lower_bound() <= next.lower_bound());
    CHECK(next.upper_bound() <= prev.upper_bound());
    prev = next;
  }
}

TEST_CASE("certified_compare on exact rationals") {
  CHECK(certified_compare(Rational(1, 6), Rational(1, 4)) == Ordering::less);
  CHECK(certified_compare(Rational(1, 4), Rational(1, 4)) == Ordering::equal);
  CHECK(certified_compare(Rational(1, 3), Rational(1, 4)) == Ordering::greater);
}

TEST_CASE("overlapping balls compare ambiguous") {
  Rational eps(1, Int(1) << 66);
  Ball a = Ball::from_interval(Rational(1, 2) - eps, Rational(1, 2) + eps, 128);
  Ball b = Ball::from_interval(Rational(1, 2) - eps, Rational(1, 2) + eps, 128);
  CHECK(Ball::compare(a, b) == Ordering::ambiguous);
  Ball c = Ball::from_rational(Rational(3, 4), 128);
  CHECK(Ball::compare(a, c) == Ordering::less);
  CHECK(Ball::compare(c, a) == Ordering::greater);
}

TEST_CASE("field reduction: beta^2 = beta + 1 in the golden field") {
  auto K = golden_field();
  FieldElement beta = FieldElement::generator(K);
  FieldElement one = FieldElement::one(K);
  CHECK(beta * beta == beta + one);
  CHECK(certified_compare(beta * beta, beta + one) == Ordering::equal);
  // (beta - 1) * beta = 1
  CHECK((beta - one) * beta == one);
}

TEST_CASE("field reduction: beta^3 = beta^2 + beta + 1 for m = 3") {
  auto K = NumberField::make(IntPolynomial({Int(-1), Int(-1), Int(-1), Int(1)}),
                             {Rational(1), Rational(2)});
  FieldElement beta = FieldElement::generator(K);
  FieldElement one = FieldElement::one(K);
  CHECK(beta.pow(3) == beta * beta + beta + one);
}

TEST_CASE("additive identity and mixed-field rejection") {
  auto K = golden_field();
  FieldElement a = FieldElement::from_rational(K, Rational(7, 3)) * FieldElement::generator(K);
  CHECK(a + FieldElement::zero(K) == a);
  auto K3 = NumberField::make(IntPolynomial({Int(-1), Int(-1), Int(-1), Int(1)}),
                              {Rational(1), Rational(2)});
  CHECK_THROWS_AS(a + FieldElement::generator(K3), MixedFields);
}

TEST_CASE("enclosure soundness against exact rational arithmetic") {
  std::mt19937_64 rng(20240707);
  for (int trial = 0; trial < 200; ++trial) {
    Rational exact(static_cast<long>(rng() % 2000) - 1000, static_cast<long>(rng() % 50) + 1);
    exact.canonicalize();
    Ball ball = Ball::from_rational(exact, 96);
    for (int op = 0; op < 12; ++op) {
      Rational r(static_cast<long>(rng() % 600) - 300, static_cast<long>(rng() % 40) + 1);
      r.canonicalize();
      Ball rb = Ball::from_rational(r, 96);
      switch (rng() % 4) {
        case 0: exact += r; ball = ball + rb; break;
        case 1: exact -= r; ball = ball - rb; break;
        case 2: exact *= r; ball = ball * rb; break;
        default:
          if (r != 0 && !rb.contains_zero()) {
            exact /= r;
            ball = ball / rb;
          }
      }
      REQUIRE(ball.contains(exact));
    }
  }
}

TEST_CASE("reduction correctness: symbolic vs ball evaluation routes") {
  auto K = golden_field();
  std::mt19937_64 rng(1234);
  Ball beta = K->root_enclosure(160);
  for (int trial = 0; trial < 100; ++trial) {
    Rational c0(static_cast<long>(rng() % 200) - 100, static_cast<long>(rng() % 30) + 1);
    Rational c1(static_cast<long>(rng() % 200) - 100, static_cast<long>(rng() % 30) + 1);
    c0.canonicalize();
    c1.canonicalize();
    FieldElement e = FieldElement::from_rational(K, c0) +
                     FieldElement::generator(K).scaled(c1);
    FieldElement sq = e * e;  // exercises the reduction
    Ball route_a = sq.to_ball(128);
    Ball direct = Ball::from_rational(c0, 160) + beta * Ball::from_rational(c1, 160);
    Ball route_b = direct * direct;
    // the enclosures must intersect
    CHECK(route_a.lower_bound() <= route_b.upper_bound());
    CHECK(route_b.lower_bound() <= route_a.upper_bound());
  }
}

TEST_CASE("field sign screen never contradicts the exact sign") {
  auto K = golden_field();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Int> num(2);
    num[0] = static_cast<long>(rng() % 2001) - 1000;
    num[1] = static_cast<long>(rng() % 2001) - 1000;
    int exact = field_sign(*K, num);
    if (auto s = field_sign_screen(*K, num.data(), 2)) CHECK(*s == exact);
  }
  // an engineered near-tie: num0 + num1*beta with num0/num1 ~ -beta
  std::vector<Int> tie(2);
  tie[0] = Int("-16180339887498948482045868343656381177");
  tie[1] = Int("10000000000000000000000000000000000000");
  int s = field_sign(*K, tie);
  CHECK((s == 1 || s == -1));
  // cross-check against ball arithmetic
  Ball v = FieldElement::from_raw(K, tie, Int(1)).to_ball(256);
  CHECK(v.contains_zero() == false);
  CHECK((v.mid_double() > 0 ? 1 : -1) == s);
}

TEST_CASE("field inverse and division") {
  auto K = NumberField::make(IntPolynomial({Int(-1), Int(-1), Int(-1), Int(1)}),
                             {Rational(1), Rational(2)});
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    FieldElement e = FieldElement::from_rational(K, Rational(static_cast<long>(rng() % 19) - 9)) +
                     FieldElement::generator(K).scaled(Rational(static_cast<long>(rng() % 9) + 1, 2));
    if (e.is_zero()) continue;
    CHECK(e * e.inverse() == FieldElement::one(K));
  }
  // 1/(beta-1) for m=3 equals (beta^2 - 1)/2
  FieldElement beta = FieldElement::generator(K);
  FieldElement one = FieldElement::one(K);
  CHECK((beta - one).inverse() == (beta * beta - one).scalar_div(Rational(2)));
}

TEST_CASE("precision policy invariant") {
  PrecisionPolicy pol;
  pol.digits_budget = 100000;
  double log2_phi = 0.6942419136306174;
  CHECK(pol.working_bits(log2_phi) >= 100000 * log2_phi + 64);
  CHECK(pol.working_bits(log2_phi) <= 100000 * log2_phi + 66);
}

TEST_CASE("restart driver doubles precision then gives up") {
  PrecisionPolicy pol;
  pol.digits_budget = 10;
  pol.max_restarts = 3;
  int restarts = -1;
  int calls = 0;
  int got = run_with_restarts(
      pol, 1.0,
      [&](mpfr_prec_t prec) -> int {
        ++calls;
        if (prec < 4 * pol.working_bits(1.0)) throw AmbiguousAtPrecision("forced");
        return 42;
      },
      &restarts);
  CHECK(got == 42);
  CHECK(restarts == 2);
  CHECK(calls == 3);
  CHECK_THROWS_AS(run_with_restarts(pol, 1.0,
                                    [&](mpfr_prec_t) -> int {
                                      throw AmbiguousAtPrecision("always");
                                    }),
                  PrecisionExhausted);
}
