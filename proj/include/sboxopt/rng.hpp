#pragma once

// Reproducible randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; bounded draws use our own rejection
// sampler because std::uniform_int_distribution is implementation-defined.

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "sbox.hpp"

namespace sboxopt {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    // Largest multiple of bound that fits; draws at or above it are rejected.
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % bound;
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer over (seed, stream): independent sub-seeds for the
// stages of one run.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniformly random bijective S-box via Fisher-Yates on the identity.
inline SBox random_sbox(int n, Rng& rng) {
  check_dimension(n);
  const std::size_t size = std::size_t{1} << n;
  std::vector<SBox::value_type> t(size);
  for (std::size_t i = 0; i < size; ++i) t[i] = static_cast<SBox::value_type>(i);
  for (std::size_t i = size - 1; i > 0; --i) {
    std::swap(t[i], t[rng.below(i + 1)]);
  }
  return SBox(std::move(t));
}

inline SBox random_sbox(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_sbox(n, rng);
}

}  // namespace sboxopt
