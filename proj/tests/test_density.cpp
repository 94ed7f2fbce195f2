#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "betafreq/density.hpp"
#include "betafreq/errors.hpp"

using namespace betafreq;

namespace {

FieldElement rat(const Beta& b, const std::string& s) {
  return FieldElement::from_rational(b.field(), *parse_rational(s));
}

} // namespace

TEST_CASE("density model at m=2, p=1/2") {
  Beta b = pseudo_golden(2);
  TunedParams tp = target_to_cut(b, Rational(1, 2));
  DensityModel model = build_density(tp);

  // breakpoints 0 < b < beta b = 1/2 < T(b+1) < b+1 < hi
  REQUIRE(model.breakpoints.size() == 6);
  CHECK(model.breakpoints[0].is_zero());
  CHECK(model.breakpoints[1] == tp.window_lo);
  CHECK(model.breakpoints[2] == rat(b, "1/2"));
  CHECK(model.breakpoints[2] == tp.window_lo * b.value());
  CHECK(model.breakpoints[3] == (tp.window_lo + FieldElement::one(b.field())) * b.value() -
                                    FieldElement::one(b.field()));
  CHECK(model.breakpoints[3].to_double() == doctest::Approx(1.1180340).epsilon(1e-6));
  CHECK(model.breakpoints[4].to_double() == doctest::Approx(1.3090170).epsilon(1e-6));
  CHECK(model.breakpoints[5] == b.interval_hi());

  // heights 0, 1, 1 + 1/beta, 1, 0
  REQUIRE(model.heights.size() == 5);
  CHECK(model.heights[0].is_zero());
  CHECK(model.heights[1] == FieldElement::one(b.field()));
  CHECK(model.heights[2] == FieldElement::one(b.field()) + b.value().inverse());
  CHECK(model.heights[2].to_double() == doctest::Approx(1.6180340).epsilon(1e-6));
  CHECK(model.heights[3] == FieldElement::one(b.field()));
  CHECK(model.heights[4].is_zero());
}

TEST_CASE("density point evaluations at m=2, p=1/2") {
  Beta b = pseudo_golden(2);
  DensityModel model = build_density(target_to_cut(b, Rational(1, 2)));
  CHECK(density_eval(model, rat(b, "1/5")).is_zero());
  CHECK(density_eval(model, rat(b, "2/5")) == FieldElement::one(b.field()));
  CHECK(density_eval(model, rat(b, "3/5")) ==
        FieldElement::one(b.field()) + b.value().inverse());
  // left-closed at the breakpoints
  CHECK(density_eval(model, model.breakpoints[1]) == FieldElement::one(b.field()));
  CHECK_THROWS_AS(density_eval(model, rat(b, "-1/10")), OutOfDomain);
  CHECK_THROWS_AS(density_eval(model, rat(b, "9/5")), OutOfDomain);
}

TEST_CASE("mass identities, exactly, across m and p") {
  for (int m : {2, 3, 4}) {
    Beta b = pseudo_golden(m);
    Ball c = freq_radius(b).to_ball(64);
    Rational c_lo = c.lower_bound() * Rational(9, 10);
    for (int i = -2; i <= 2; ++i) {
      Rational p = Rational(1, 2) + c_lo * Rational(i, 2);
      TunedParams tp = target_to_cut(b, p);
      DensityModel model = build_density(tp);
      FieldElement one = FieldElement::one(b.field());
      // mu(I) = (m beta + beta - 2m)/(beta - 1), checked inside build_density,
      // and mu[0, cut) = 1 - (m-1) b
      FieldElement mu_cut = measure_mu(model, FieldElement::zero(b.field()), tp.cut);
      CHECK(mu_cut == one - tp.window_lo.scaled(Rational(m - 1)));
      // nu[0, cut) = p
      CHECK(mu_cut * model.nu_scale == tp.p_exact);
      // nu(I) = 1
      FieldElement total =
          measure_mu(model, FieldElement::zero(b.field()), b.interval_hi()) * model.nu_scale;
      CHECK(total == one);
      // density >= 1 on the open cells of the merge window [b, b+1]
      for (size_t j = 0; j + 1 < model.breakpoints.size(); ++j) {
        if (model.breakpoints[j].compare(tp.window_lo) >= 0 &&
            model.breakpoints[j + 1].compare(tp.window_lo + one) <= 0) {
          CHECK((model.heights[j] - one).sign() >= 0);
        }
      }
    }
  }
}

TEST_CASE("mu_total at b=0, m=2: both closed forms agree") {
  Beta b = pseudo_golden(2);
  TunedParams tp = params_from_window_lo(b, FieldElement::zero(b.field()));
  DensityModel model = build_density(tp);
  FieldElement one = FieldElement::one(b.field());
  // 1 + (beta-1)/beta = (3 beta - 4)/(beta - 1) at the golden ratio
  CHECK(model.mu_total == one + (b.value() - one) * b.value().inverse());
  CHECK(model.mu_total.to_double() == doctest::Approx(1.3819660).epsilon(1e-6));
}

TEST_CASE("truncation equivalence: N-term series equals the m-term model") {
  for (int m : {2, 3}) {
    Beta b = pseudo_golden(m);
    TunedParams tp = target_to_cut(b, Rational(2, 5));
    DensityModel canonical = build_density(tp);
    for (int extra = 0; extra <= 5; ++extra) {
      DensityModel longer = build_density(tp, m + extra);
      REQUIRE(longer.breakpoints.size() == canonical.breakpoints.size());
      for (size_t i = 0; i < canonical.breakpoints.size(); ++i)
        CHECK(longer.breakpoints[i] == canonical.breakpoints[i]);
      for (size_t i = 0; i < canonical.heights.size(); ++i)
        CHECK(longer.heights[i] == canonical.heights[i]);
    }
  }
}

TEST_CASE("analytic bin masses sum to one exactly") {
  Beta b = pseudo_golden(2);
  DensityModel model = build_density(target_to_cut(b, Rational(1, 2)));
  auto masses = analytic_bin_masses(model, 64);
  FieldElement sum = FieldElement::zero(b.field());
  for (const auto& m : masses) {
    CHECK(m.sign() >= 0);
    sum = sum + m;
  }
  CHECK(sum == FieldElement::one(b.field()));
}

TEST_CASE("orbit histogram converges to the analytic density") {
  Beta b = pseudo_golden(2);
  TunedParams tp = target_to_cut(b, Rational(1, 2));
  // a small-denominator start would be eventually periodic (beta is Pisot);
  // a 64-bit-denominator start has an astronomically long preperiod
  Rational u(Int("12157665459056928801"), Int(1) << 64);
  u.canonicalize();
  FieldElement x0 = FieldElement::from_rational(b.field(), u) * b.interval_hi();
  HistogramComparison h = orbit_histogram_compare(tp, x0, 60000, 500, 64);
  CHECK(h.l1 <= 0.2);
  double esum = 0, asum = 0;
  for (int i = 0; i < 64; ++i) {
    esum += h.empirical[i];
    asum += h.analytic[i];
  }
  CHECK(esum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(asum == doctest::Approx(1.0).epsilon(1e-12));

  // more steps give a (statistically) tighter histogram
  HistogramComparison h2 = orbit_histogram_compare(tp, x0, 240000, 500, 64);
  CHECK(h2.l1 < h.l1 + 0.02);
  CHECK_THROWS_AS(orbit_histogram_compare(tp, x0, 400, 500, 64), InvalidSpec);
}
