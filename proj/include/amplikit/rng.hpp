#ifndef AMPLIKIT_RNG_HPP
#define AMPLIKIT_RNG_HPP

// Deterministic keyed random streams.
//
// Randomized routines never share a global generator.  Each consumer opens a
// stream keyed by (seed, stream index), so parallel workers draw identical
// values regardless of scheduling: worker i always reads stream i.  The
// generator is splitmix64 — entirely 64-bit integer arithmetic, hence
// reproducible across platforms.  It is a test-point sampler, not a
// cryptographic source.

#include <cstdint>
#include <vector>

#include "amplikit/rational.hpp"

namespace amplikit {

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, bound) by modular reduction.  The O(bound/2^64) bias is
  // irrelevant for sampling test points and keeps results platform-stable.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  // Uniform integer in [lo, hi], inclusive.
  long next_int(long lo, long hi) {
    return lo + static_cast<long>(
                    next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Positive rational p/q with p, q uniform in [1, 10^4].
  Rat next_positive_rational() {
    long p = next_int(1, 10000);
    long q = next_int(1, 10000);
    Rat r(p, q);
    r.canonicalize();
    return r;
  }

  // Nonzero rational with a random sign.
  Rat next_signed_rational() {
    Rat r = next_positive_rational();
    return (next_u64() & 1) ? r : Rat(-r);
  }

  // Strictly increasing positive rationals t_1 < ... < t_count.  Drawing
  // t_j = j + p_j / (2 * 10^4) keeps the sequence increasing for any draw,
  // which is what moment-curve samples need.
  std::vector<Rat> next_increasing_rationals(std::size_t count) {
    std::vector<Rat> points;
    points.reserve(count);
    for (std::size_t j = 1; j <= count; ++j) {
      long p = next_int(1, 10000);
      Rat t = Rat(static_cast<long>(j)) + Rat(p, 20000);
      t.canonicalize();
      points.push_back(t);
    }
    return points;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace amplikit

#endif  // AMPLIKIT_RNG_HPP
