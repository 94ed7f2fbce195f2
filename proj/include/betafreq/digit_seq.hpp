#pragma once

#include <cstdint>
#include <vector>

#include "betafreq/beta.hpp"
#include "betafreq/numerics.hpp"

namespace betafreq {

enum class Arith { exact, ball };

inline const char* to_string(Arith a) { return a == Arith::exact ? "exact" : "ball"; }

struct GenOptions {
  Arith arith = Arith::exact;
  // digits_budget 0 means "use the requested stream length"
  PrecisionPolicy policy{};
};

/// A finite digit stream over {0, ..., beta.max_digit()} together with the
/// point it expands and how it was produced.
struct DigitSeq {
  Beta beta;
  FieldElement x;
  std::vector<uint8_t> digits;
  Arith arith = Arith::exact;
  long precision_bits = 0;  // ball mode working precision actually used
  int restarts = 0;
  bool degenerate_endpoint = false;
  size_t entry_len = 0;  // balanced generator: digits emitted by the entry phase

  size_t size() const { return digits.size(); }
};

} // namespace betafreq
