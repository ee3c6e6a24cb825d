#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace panelid {

// splitmix64 finalizer (Steele, Lea & Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of replication r within an experiment seeded with `base`:
//   splitmix64(splitmix64(base) ^ splitmix64(r + 1)).
// This mixing is part of the reproducibility contract of every experiment
// and must not change between versions.
inline std::uint64_t replication_seed(std::uint64_t base, std::uint64_t rep) {
  return splitmix64(splitmix64(base) ^ splitmix64(rep + 1));
}

// Deterministic N(0,1) sampler. The uniform stream comes from mt19937_64
// (bit-exact per the C++ standard); the top 53 bits are mapped to (0,1) and
// transformed with Box-Muller. Both transforms are written out here instead
// of using std::*_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  // Uniform on the open interval (0,1).
  double uniform() {
    const std::uint64_t bits = eng_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace panelid
