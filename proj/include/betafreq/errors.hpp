#pragma once

#include <stdexcept>
#include <string>

namespace betafreq {

// Error family. Each class carries the process exit code the CLI maps it to:
//   2 invalid input/config, 3 precision exhausted, 4 search/budget exhausted.
class Error : public std::runtime_error {
public:
  Error(std::string msg, int exit_code) : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

private:
  int exit_code_;
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& m) : Error("invalid beta spec: " + m, 2) {}
};
struct InvalidIndex : Error {
  explicit InvalidIndex(const std::string& m) : Error("invalid index: " + m, 2) {}
};
struct NoRootInBracket : Error {
  explicit NoRootInBracket(const std::string& m) : Error("no root in bracket: " + m, 2) {}
};
struct MultipleRoots : Error {
  explicit MultipleRoots(const std::string& m) : Error("multiple roots: " + m, 2) {}
};
struct MixedFields : Error {
  explicit MixedFields(const std::string& m) : Error("mixed fields: " + m, 2) {}
};
struct DigitOutOfAlphabet : Error {
  explicit DigitOutOfAlphabet(const std::string& m) : Error("digit out of alphabet: " + m, 2) {}
};
struct UnsupportedBase : Error {
  explicit UnsupportedBase(const std::string& m) : Error("unsupported base: " + m, 2) {}
};
struct FrequencyOutOfRange : Error {
  explicit FrequencyOutOfRange(const std::string& m) : Error("frequency out of range: " + m, 2) {}
};
struct EmptySequence : Error {
  explicit EmptySequence(const std::string& m) : Error("empty sequence: " + m, 2) {}
};
struct OutOfDomain : Error {
  explicit OutOfDomain(const std::string& m) : Error("out of domain: " + m, 2) {}
};
struct BoundaryHit : Error {
  explicit BoundaryHit(const std::string& m) : Error("orbit hit a cut point: " + m, 2) {}
};
struct IdentityViolated : Error {
  explicit IdentityViolated(const std::string& m) : Error("orbit identity violated: " + m, 2) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error("config error: " + m, 2) {}
};

// A single certified comparison could not be decided at the current precision.
struct AmbiguousAtPrecision : Error {
  explicit AmbiguousAtPrecision(const std::string& m) : Error("ambiguous at precision: " + m, 3) {}
};
// The restart policy ran out of restarts (or an exact sign ran past its separation cap).
struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& m) : Error("precision exhausted: " + m, 3) {}
};

struct HorizonExhausted : Error {
  explicit HorizonExhausted(const std::string& m) : Error("branch horizon exhausted: " + m, 4) {}
};
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& m) : Error("enumeration budget exceeded: " + m, 4) {}
};

} // namespace betafreq
