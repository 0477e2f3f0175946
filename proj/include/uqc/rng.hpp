#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

namespace uqc {

// Seedable, splittable deterministic generator (xoshiro256++ state seeded
// via splitmix64). Every stochastic operation in the library takes an
// explicit Rng; there is no hidden global state.
//
// split(key) derives an independent stream from the *origin* seed and the
// key only, never from how many draws the parent has consumed. That lets
// per-point streams be keyed by point index so results do not depend on
// evaluation order or thread schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : origin_(seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  Rng split(std::uint64_t key) const {
    // golden-ratio multiplier decorrelates consecutive keys
    return Rng(origin_ ^ (0x9E3779B97F4A7C15ULL * (key + 1)));
  }

  std::uint64_t origin_seed() const { return origin_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, 1), 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // +1 or -1 with equal probability (SPSA perturbations)
  int rademacher() { return (next_u64() & 1ULL) ? 1 : -1; }

  // Draws an index from an (approximately normalized) probability vector by
  // inverse-CDF scan. Entries below -1e-9 are rejected as invalid; small
  // negative rounding noise is clamped to zero.
  std::size_t sample_index(std::span<const double> probs) {
    std::size_t last_positive = 0;
    bool seen_positive = false;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] < -1e-9)
        throw std::runtime_error("sample_index: negative probability entry");
      if (probs[i] > 0.0) {
        last_positive = i;
        seen_positive = true;
      }
    }
    if (!seen_positive) throw std::runtime_error("sample_index: all-zero probability vector");

    const double u = next_double();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i] > 0.0 ? probs[i] : 0.0;
      if (u < acc) return i;
    }
    return last_positive;  // u fell into rounding slack at the top
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t origin_;
  std::uint64_t s_[4];
};

}  // namespace uqc
