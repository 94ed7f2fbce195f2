#pragma once

#include <memory>

#include "betafreq/beta.hpp"
#include "betafreq/digit_seq.hpp"

namespace betafreq {

/// Orbit kernel: the state y of a digit stream under y <- beta*y - k, with
/// certified branch decisions against registered constants.
///
/// Two backends share this interface. The exact backend keeps y in Q(beta) as
/// an integer coefficient vector over a managed denominator (additions per
/// step, O(1) float screens for digit decisions, exact fallback on near-ties;
/// never ambiguous). The ball backend keeps y as an mpfr midpoint with a
/// rigorously propagated radius and throws AmbiguousAtPrecision when a branch
/// decision is not certified at the working precision.
///
/// Constants must be registered before the first step. Copying an orbit
/// snapshots its full state.
class Orbit {
public:
  static Orbit exact(const Beta& beta, const FieldElement& x0);
  static Orbit ball(const Beta& beta, const FieldElement& x0, mpfr_prec_t prec);
  Orbit(const Orbit& o);
  Orbit(Orbit&&) noexcept;
  Orbit& operator=(const Orbit&) = delete;
  ~Orbit();

  int register_constant(const FieldElement& c);
  // pre-size the coefficient storage for a run of this many steps
  void reserve(size_t digits);

  void mul_beta();        // y <- beta * y
  void sub_digit(long k); // y <- y - k

  // certified sign of y - c[handle]; ball backend may throw AmbiguousAtPrecision
  int sign_vs(int handle) const;
  // clamp(floor(y - c[handle]), 0, max_digit); *exact_hit reports y - c == k exactly
  long floor_minus(int handle, long max_digit, bool* exact_hit = nullptr) const;

  double approx() const;       // double estimate of y (not certified)
  FieldElement value() const;  // exact backend only
  Arith arith() const;
  size_t steps() const;

private:
  Orbit();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace betafreq
