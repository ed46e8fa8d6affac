#pragma once

// Deterministic seeded randomness for verification runs.  All draws go
// through mt19937_64 directly (no std distributions, whose outputs differ
// across standard libraries), so a seed fixes every report byte-for-byte.

#include "leibniz/fields.hpp"

#include <random>

namespace leibniz {

class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // Inclusive range.
  long int_in(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("int_in: empty range");
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  // Small rational with numerator in [-max_num, max_num], denominator in [1, max_den].
  Rational rational(long max_num = 6, long max_den = 3) {
    return Rational(int_in(-max_num, max_num), int_in(1, max_den));
  }

  Rational nonzero_rational(long max_num = 6, long max_den = 3) {
    for (;;) {
      Rational r = rational(max_num, max_den);
      if (r != 0) return r;
    }
  }

  bool coin() { return (next() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace leibniz
