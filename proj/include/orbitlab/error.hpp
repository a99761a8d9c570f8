#pragma once

#include <stdexcept>
#include <string>

namespace orbitlab {

// Base of every error thrown by the library. The CLI maps each subclass to
// an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: dimension mismatch, bad file, out-of-range argument.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A configured scale cap (degree, split count, exact-arithmetic size) would
// be exceeded.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// Evaluation produced a non-finite value. `step` is the iterate index
// (1-based) at which it happened, 0 when not applicable.
class NonFinite : public Error {
 public:
  NonFinite(const std::string& what, int step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

// Input sets that do not fit together, e.g. a periodic point whose image is
// not in the set.
class Inconsistent : public Error {
 public:
  using Error::Error;
};

// A checked mathematical guarantee did not hold (Bezout ceiling, split
// verification, zero resultant). Signals a core bug or a degenerate instance.
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace orbitlab
