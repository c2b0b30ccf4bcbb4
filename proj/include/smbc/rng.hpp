#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace smbc {

// Deterministic RNG with a fixed algorithm so that seeded runs reproduce
// bit-for-bit regardless of the standard library in use (std::* distributions
// are implementation-defined). splitmix64 for seeding/hashing, xoshiro256**
// for the stream.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-independent-free hash combiner for deriving substream seeds.
inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + b);
  return splitmix64(s);
}

class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed = 0) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exp(1) variate; uniform() < 1 so the log argument is positive.
  double exponential() { return -std::log(1.0 - uniform()); }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4]{};
};

// Dirichlet(1) sample = normalized i.i.d. Exp(1) draws.
inline std::vector<double> dirichlet_uniform(Xoshiro256ss& rng, std::size_t n) {
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    x = rng.exponential();
    total += x;
  }
  for (auto& x : v) x /= total;
  return v;
}

}  // namespace smbc
