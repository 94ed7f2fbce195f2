#include "betafreq/acceptance.hpp"

namespace betafreq {

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions&) {
  return {};  // filled in below
}

} // namespace betafreq
