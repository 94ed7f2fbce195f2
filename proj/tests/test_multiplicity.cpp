#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "betafreq/errors.hpp"
#include "betafreq/freq_tuned.hpp"
#include "betafreq/frequency.hpp"
#include "betafreq/multiplicity.hpp"

using namespace betafreq;

namespace {

FieldElement rat(const Beta& b, const std::string& s) {
  return FieldElement::from_rational(b.field(), *parse_rational(s));
}

ExpansionOracle greedy_oracle(const Beta& b) {
  return [b](const FieldElement& x, size_t n) { return greedy_expand(b, x, n); };
}

} // namespace

TEST_CASE("find_branch at the golden ratio, x = 1") {
  Beta phi = Beta::make("pg:2");
  FieldElement one = FieldElement::one(phi.field());
  DigitSeq g = greedy_expand(phi, one, 50);
  BranchPoint bp = find_branch(phi, one, g.digits, 1, 50);
  // T_0(1) = beta = hi stays inside the interval
  CHECK(bp.index == 1);
  CHECK(bp.alt_digit == 0);
}

TEST_CASE("find_branch: x = 0 has a unique expansion") {
  Beta phi = Beta::make("pg:2");
  std::vector<uint8_t> zeros(60, 0);
  CHECK_THROWS_AS(find_branch(phi, FieldElement::zero(phi.field()), zeros, 1, 40),
                  HorizonExhausted);
}

TEST_CASE("find_branch on seeded greedy streams at beta = 2.5") {
  Beta b = Beta::make("2.5");
  std::mt19937_64 rng(606);
  int found = 0;
  const int samples = 40;
  for (int i = 0; i < samples; ++i) {
    Rational u(static_cast<long>(rng() % 999983) + 1, 999984);
    FieldElement x = FieldElement::from_rational(b.field(), u) * b.interval_hi();
    DigitSeq g = greedy_expand(b, x, 60);
    try {
      BranchPoint bp = find_branch(b, x, g.digits, 1, 50);
      CHECK(bp.index <= 50);
      ++found;
      // the alternative digit must itself be feasible
      auto mutated = g.digits;
      mutated.resize(bp.index);
      mutated[bp.index - 1] = bp.alt_digit;
      CHECK(is_feasible(b, x, mutated));
    } catch (const HorizonExhausted&) {
    }
  }
  CHECK(found == samples);  // branch within 50 steps for every seeded sample
}

TEST_CASE("variants at the golden ratio, x = 1: the two canonical expansions") {
  Beta phi = Beta::make("pg:2");
  FieldElement one = FieldElement::one(phi.field());
  auto vs = variants(phi, one, greedy_oracle(phi), 2, 40, 100);
  REQUIRE(vs.size() == 2);
  // first variant: alternative digit 0 at position 1, greedy tail of beta is all ones
  CHECK(vs[0].switch_index == 1);
  std::vector<uint8_t> expect0{0};
  expect0.insert(expect0.end(), 39, 1);
  CHECK(vs[0].digits == expect0);
  // second variant differs from the base (1,1,0,0,...) at a later index
  CHECK(vs[1].switch_index > 1);
  DigitSeq base = greedy_expand(phi, one, 40);
  CHECK(vs[1].digits != base.digits);
  CHECK(vs[1].digits[0] == base.digits[0]);
}

TEST_CASE("variants: count 0 is empty, switch indices increase, prefixes feasible") {
  Beta b = Beta::make("2.5");
  FieldElement x = rat(b, "3/7");
  CHECK(variants(b, x, greedy_oracle(b), 0, 30, 50).empty());
  auto vs = variants(b, x, greedy_oracle(b), 5, 400, 100);
  REQUIRE(vs.size() == 5);
  for (size_t j = 0; j + 1 < vs.size(); ++j) CHECK(vs[j].switch_index < vs[j + 1].switch_index);
  std::set<std::vector<uint8_t>> uniq;
  for (const auto& v : vs) {
    CHECK(v.digits.size() == 400);
    CHECK(is_feasible(b, x, v.digits));
    uniq.insert(v.digits);
  }
  CHECK(uniq.size() == vs.size());
  // pairwise distinctness at the recorded switch positions
  DigitSeq base = greedy_expand(b, x, 400);
  for (size_t j = 0; j < vs.size(); ++j) {
    CHECK(vs[j].digits[vs[j].switch_index - 1] != base.digits[vs[j].switch_index - 1]);
    for (size_t i = 0; i + 1 < vs[j].switch_index; ++i)
      CHECK(vs[j].digits[i] == base.digits[i]);
  }
}

TEST_CASE("variants propagate the frequency of a tuned oracle") {
  Beta b = pseudo_golden(2);
  TunedParams tp = target_to_cut(b, Rational(1, 2));
  ExpansionOracle oracle = [tp](const FieldElement& x, size_t n) {
    return tuned_expand(tp, x, n);
  };
  FieldElement x = rat(b, "8/11");
  auto vs = variants(b, x, oracle, 4, 30000, 1000);
  for (const auto& v : vs) {
    FrequencyProfile p = freq_profile(v.digits, 1, 0);
    CHECK(std::abs(p.point[0] - 0.5) <= 0.03);
    CHECK(is_feasible(b, x, v.digits));
  }
}

TEST_CASE("enumerate_prefixes at the golden ratio, x = 1") {
  Beta phi = Beta::make("pg:2");
  FieldElement one = FieldElement::one(phi.field());
  PrefixEnumeration e = enumerate_prefixes(phi, one, 2);
  CHECK(e.prefixes == std::vector<std::string>{"01", "10", "11"});
}

TEST_CASE("enumerate_prefixes: zero has exactly one prefix") {
  Beta b = Beta::make("2.5");
  for (int depth : {1, 4, 8}) {
    PrefixEnumeration e = enumerate_prefixes(b, FieldElement::zero(b.field()), depth);
    REQUIRE(e.prefixes.size() == 1);
    CHECK(e.prefixes[0] == std::string(depth, '0'));
  }
}

TEST_CASE("prefix counts are monotone in depth") {
  Beta phi = Beta::make("pg:2");
  FieldElement x = rat(phi, "13/21");
  size_t prev = 1;
  for (int depth = 1; depth <= 12; ++depth) {
    PrefixEnumeration e = enumerate_prefixes(phi, x, depth);
    CHECK(e.prefixes.size() >= prev);
    prev = e.prefixes.size();
  }
}

TEST_CASE("greedy base of x = 1 admits exactly two branch points") {
  // the greedy orbit of 1 reaches 0 after two steps; 0 has a unique expansion,
  // so the splice construction along this particular base stream saturates
  Beta phi = Beta::make("pg:2");
  FieldElement one = FieldElement::one(phi.field());
  auto two = variants(phi, one, greedy_oracle(phi), 2, 30, 50);
  CHECK(two.size() == 2);
  CHECK_THROWS_AS(variants(phi, one, greedy_oracle(phi), 3, 30, 50), HorizonExhausted);
}

TEST_CASE("every generator's prefix appears in its enumeration") {
  Beta phi = Beta::make("pg:2");
  FieldElement one = FieldElement::one(phi.field());
  PrefixEnumeration e = enumerate_prefixes(phi, one, 20);
  auto contains = [&](const std::string& w) {
    return std::binary_search(e.prefixes.begin(), e.prefixes.end(), w);
  };
  DigitSeq base = greedy_expand(phi, one, 20);
  CHECK(contains(digit_word(base.digits, 1)));
  // a tuned oracle cycles through the interior, so branches never dry up
  TunedParams tp = target_to_cut(phi, Rational(1, 2));
  ExpansionOracle oracle = [tp](const FieldElement& y, size_t n) {
    return tuned_expand(tp, y, n);
  };
  auto vs = variants(phi, one, oracle, 6, 20, 50);
  CHECK(vs.size() == 6);
  for (const auto& v : vs) CHECK(contains(digit_word(v.digits, 1)));
}

TEST_CASE("enumeration budget guard") {
  Beta b = Beta::make("2.5");
  FieldElement x = rat(b, "1/2");
  CHECK_THROWS_AS(enumerate_prefixes(b, x, 12, 10), BudgetExceeded);
}
