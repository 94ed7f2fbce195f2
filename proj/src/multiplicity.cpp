#include "betafreq/multiplicity.hpp"

#include <algorithm>

#include "betafreq/errors.hpp"

namespace betafreq {

namespace {

// feasible digits at u = beta*y via the orbit kernel: k in [ceil(u-hi), floor(u)]
struct KernelWindow {
  long lo, hi;
  bool lo_exact;  // u - hi == lo exactly
};

KernelWindow feasible_window(const Orbit& orb, int h_hi, long max_digit) {
  KernelWindow w{};
  w.hi = orb.floor_minus(-1, max_digit);
  if (orb.sign_vs(-1) < 0) {  // u < 0: nothing feasible
    w.lo = 1;
    w.hi = 0;
    return w;
  }
  bool hit = false;
  long f = orb.floor_minus(h_hi, max_digit, &hit);  // floor(u - hi), clamped at 0
  if (orb.sign_vs(h_hi) <= 0) w.lo = 0;             // u <= hi: digit 0 feasible
  else w.lo = hit ? f : f + 1;                      // ceil(u - hi)
  return w;
}

} // namespace

BranchPoint find_branch(const Beta& beta, const FieldElement& x, std::span<const uint8_t> digits,
                        size_t start, size_t horizon) {
  if (start < 1) throw InvalidSpec("branch search starts at index 1");
  require_in_interval(beta, x);
  const long maxd = beta.max_digit();
  const size_t last = std::min(digits.size(), start + horizon);
  Orbit orb = Orbit::exact(beta, x);
  int h_hi = orb.register_constant(beta.interval_hi());
  orb.reserve(last);
  for (size_t n = 1; n <= last; ++n) {
    uint8_t base = digits[n - 1];
    orb.mul_beta();
    if (n >= start) {
      KernelWindow w = feasible_window(orb, h_hi, maxd);
      for (long k = std::max(w.lo, 0L); k <= w.hi; ++k) {
        if (k != base) return BranchPoint{n, static_cast<uint8_t>(k)};
      }
    }
    orb.sub_digit(base);
    if (orb.sign_vs(-1) < 0 || orb.sign_vs(h_hi) > 0)
      throw InvalidSpec("digit buffer is not a feasible expansion of x at index " +
                        std::to_string(n));
  }
  throw HorizonExhausted("no alternative digit in [" + std::to_string(start) + ", " +
                         std::to_string(last) + "]");
}

std::vector<Variant> variants(const Beta& beta, const FieldElement& x,
                              const ExpansionOracle& oracle, size_t count, size_t total_len,
                              size_t horizon) {
  require_in_interval(beta, x);
  std::vector<Variant> out;
  if (count == 0) return out;
  DigitSeq base = oracle(x, total_len);
  if (base.digits.size() < total_len) throw InvalidSpec("oracle returned a short stream");

  const long maxd = beta.max_digit();
  Orbit orb = Orbit::exact(beta, x);
  int h_hi = orb.register_constant(beta.interval_hi());
  orb.reserve(total_len);
  size_t next_start = 1;
  for (size_t n = 1; n <= total_len && out.size() < count; ++n) {
    uint8_t base_digit = base.digits[n - 1];
    orb.mul_beta();
    if (n >= next_start) {
      KernelWindow w = feasible_window(orb, h_hi, maxd);
      long alt = -1;
      for (long k = std::max(w.lo, 0L); k <= w.hi; ++k) {
        if (k != base_digit) {
          alt = k;
          break;
        }
      }
      if (alt >= 0) {
        // splice: prefix + alternative digit + oracle tail of the redirected orbit
        Orbit redirected = orb;
        redirected.sub_digit(alt);
        FieldElement tail_start = redirected.value();
        Variant v;
        v.switch_index = n;
        v.alt_digit = static_cast<uint8_t>(alt);
        v.digits.assign(base.digits.begin(), base.digits.begin() + (n - 1));
        v.digits.push_back(v.alt_digit);
        if (n < total_len) {
          DigitSeq tail = oracle(tail_start, total_len - n);
          v.digits.insert(v.digits.end(), tail.digits.begin(), tail.digits.end());
        }
        out.push_back(std::move(v));
        next_start = n + 1;
      } else if (n >= next_start + horizon) {
        throw HorizonExhausted("no branch point in (" + std::to_string(next_start - 1) + ", " +
                               std::to_string(n) + "]");
      }
    }
    orb.sub_digit(base_digit);
  }
  if (out.size() < count)
    throw HorizonExhausted("ran out of stream after " + std::to_string(out.size()) +
                           " of " + std::to_string(count) + " variants");
  return out;
}

std::string digit_word(std::span<const uint8_t> digits, long alphabet_max) {
  std::string s;
  if (alphabet_max <= 9) {
    s.reserve(digits.size());
    for (uint8_t d : digits) s.push_back(static_cast<char>('0' + d));
  } else {
    for (size_t i = 0; i < digits.size(); ++i) {
      if (i) s.push_back(',');
      s += std::to_string(int(digits[i]));
    }
  }
  return s;
}

PrefixEnumeration enumerate_prefixes(const Beta& beta, const FieldElement& x, int depth,
                                     size_t budget) {
  if (depth < 0) throw InvalidSpec("depth must be nonnegative");
  require_in_interval(beta, x);
  PrefixEnumeration result;
  std::vector<uint8_t> word;
  word.reserve(depth);

  // DFS over remainders r -> beta*r - k, pruned by r in [0, hi]
  std::function<void(const FieldElement&, int)> dfs = [&](const FieldElement& r, int left) {
    if (++result.visited > budget)
      throw BudgetExceeded("enumeration visited more than " + std::to_string(budget) + " nodes");
    if (left == 0) {
      result.prefixes.push_back(digit_word(word, beta.max_digit()));
      return;
    }
    FieldElement u = r * beta.value();
    DigitWindow w = feasible_digits(beta, u);
    for (long k = std::max(w.lo, 0L); k <= w.hi; ++k) {
      word.push_back(static_cast<uint8_t>(k));
      dfs(u - FieldElement::from_rational(beta.field(), Rational(k)), left - 1);
      word.pop_back();
    }
  };
  dfs(x, depth);
  std::sort(result.prefixes.begin(), result.prefixes.end());
  return result;
}

} // namespace betafreq
