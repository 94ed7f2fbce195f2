#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "betafreq/errors.hpp"
#include "betafreq/frequency.hpp"

using namespace betafreq;

TEST_CASE("alternating stream has point frequency 1/2") {
  std::vector<uint8_t> d(10000);
  for (size_t i = 0; i < d.size(); ++i) d[i] = i % 2;
  FrequencyProfile p = freq_profile(d, 1, 100);
  CHECK(p.point[0] == doctest::Approx(0.5));
  CHECK(p.point_exact(0) == Rational(1, 2));
  CHECK(p.point_exact(0) + p.point_exact(1) == 1);
}

TEST_CASE("doubling blocks drive upper/lower frequency apart") {
  // 0-run then 1-run of length 2^j for j = 1..14
  std::vector<uint8_t> d;
  for (int j = 1; j <= 14; ++j) {
    d.insert(d.end(), size_t(1) << j, 0);
    d.insert(d.end(), size_t(1) << j, 1);
  }
  const uint64_t burn = 1000;  // skip the transient where every ratio is ~1
  FrequencyProfile p = freq_profile(d, 1, burn);

  // independent oracle: recompute the extreme prefix ratios directly
  double best_hi = 0, best_lo = 1;
  size_t zeros = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    zeros += d[i] == 0;
    double r = double(zeros) / double(i + 1);
    if (i + 1 <= burn) continue;
    best_hi = std::max(best_hi, r);
    best_lo = std::min(best_lo, r);
  }
  CHECK(p.upper[0] == doctest::Approx(best_hi).epsilon(1e-12));
  CHECK(p.lower[0] == doctest::Approx(best_lo).epsilon(1e-12));
  // closed-form extremes of the block construction: the zero ratio peaks at
  // (2^{j+1}-2)/(3*2^j-4) -> 2/3 at 0-run ends and returns to exactly 1/2 at
  // 1-run ends
  CHECK(p.upper[0] == doctest::Approx(2.0 / 3).epsilon(0.01));
  CHECK(p.lower[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(p.lower[0] <= p.point[0]);
  CHECK(p.point[0] <= p.upper[0]);
}

TEST_CASE("constant stream") {
  std::vector<uint8_t> d(100, 0);
  FrequencyProfile p = freq_profile(d, 2, 0);
  CHECK(p.point[0] == 1.0);
  CHECK(p.point[1] == 0.0);
  CHECK(p.point[2] == 0.0);
}

TEST_CASE("empty and bad inputs") {
  std::vector<uint8_t> none;
  CHECK_THROWS_AS(freq_profile(none, 1, 0), EmptySequence);
  std::vector<uint8_t> d(10, 0);
  CHECK_THROWS_AS(freq_profile(d, 1, 10), InvalidSpec);
}

TEST_CASE("balancedness predicate") {
  std::vector<uint8_t> alt(1000);
  for (size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2) ? 2 : 0;
  CHECK(is_balanced(freq_profile(alt, 2, 0), 0.01));
  std::vector<uint8_t> zeros(1000, 0);
  CHECK_FALSE(is_balanced(freq_profile(zeros, 2, 0), 0.01));
}

TEST_CASE("label equivariance under digit permutation") {
  std::mt19937_64 rng(31337);
  std::vector<uint8_t> d(5000);
  for (auto& x : d) x = rng() % 3;
  FrequencyProfile p = freq_profile(d, 2, 500);
  // permutation (0 1 2) -> (2 0 1)
  std::vector<uint8_t> perm{2, 0, 1};
  std::vector<uint8_t> pd(d.size());
  for (size_t i = 0; i < d.size(); ++i) pd[i] = perm[d[i]];
  FrequencyProfile pp = freq_profile(pd, 2, 500);
  for (int k = 0; k <= 2; ++k) {
    CHECK(pp.counts[perm[k]] == p.counts[k]);
    CHECK(pp.upper[perm[k]] == p.upper[k]);
    CHECK(pp.lower[perm[k]] == p.lower[k]);
  }
}

TEST_CASE("profiles merge by pooling counts") {
  std::vector<uint8_t> a(100, 0), b(300, 1);
  FrequencyProfile pa = freq_profile(a, 1, 0), pb = freq_profile(b, 1, 0);
  FrequencyProfile m = merge(pa, pb);
  CHECK(m.n == 400);
  CHECK(m.point_exact(0) == Rational(1, 4));
  CHECK(m.point_exact(1) == Rational(3, 4));
}

TEST_CASE("point frequencies sum to exactly one") {
  std::mt19937_64 rng(8);
  std::vector<uint8_t> d(12345);
  for (auto& x : d) x = rng() % 4;
  FrequencyProfile p = freq_profile(d, 3, 1000);
  Rational s(0);
  for (int k = 0; k <= 3; ++k) s += p.point_exact(k);
  CHECK(s == 1);
}
