#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace althull {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct LevelMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct BadLength : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct NotSimilar : Error { using Error::Error; };
struct PointNotOnVariety : Error { using Error::Error; };
struct DegenerateTangent : Error { using Error::Error; };
struct AlgebraDimensionError : Error { using Error::Error; };
struct GeneratorSearchExhausted : Error { using Error::Error; };
struct SSFailure : Error { using Error::Error; };
struct DecodeFailure : Error { using Error::Error; };

// Deterministic PRNG. mt19937_64 output is fixed by the standard, and the
// bound-rejection below avoids the implementation-defined distributions, so
// identical seeds give identical draws on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // uniform in [0, bound)
  uint64_t below(uint64_t bound) {
    if (bound == 0) throw ParamError("Rng::below: zero bound");
    uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
      uint64_t v = gen_();
      if (v < limit) return v % bound;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace althull
