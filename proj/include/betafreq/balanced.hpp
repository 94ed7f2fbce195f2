#pragma once

#include "betafreq/beta_core.hpp"

namespace betafreq {

/// Cut points of the symmetric expansion map for non-integer beta > 2.
/// z[0] and z[ceil] bound the invariant window [z_0, z_ceil]; z_1..z_floor are
/// the branch cuts, spaced 1/beta apart, with the symmetry
/// z_k + z_{ceil-k} = floor(beta)/(beta-1).
struct CutPoints {
  std::vector<FieldElement> z;  // indices 0 .. ceil(beta)
};

// throws UnsupportedBase for beta <= 2 or integer beta
CutPoints cut_points(const Beta& beta);

// Balanced expansion: branch rule [z_k, z_{k+1}) -> k (top branch closed at
// the interval end), with digit-0 / digit-floor entry phases for starts
// outside the invariant window. x = 0 and x = hi yield their constant unique
// expansions and set degenerate_endpoint.
DigitSeq balanced_expand(const Beta& beta, const FieldElement& x, size_t n,
                         const GenOptions& opt = {});

// True iff the digits of hi - x are positionwise floor(beta) minus the digits
// of x for n steps. Throws BoundaryHit if either orbit lands exactly on a
// branch cut (the symmetry statement excludes those points).
bool mirror_check(const Beta& beta, const FieldElement& x, size_t n, const GenOptions& opt = {});

} // namespace betafreq
