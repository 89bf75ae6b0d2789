#pragma once

// Magnitude-weighted fitness over the coordinate columns of the LAT:
//
//   E(S) = sum over coordinates j, sum over rows a of |LAT[a][2^{n-j}]|^M
//
// Lower is better. Values are exact 128-bit integers; for n = 8, M = 10 the
// largest possible total is 8 * 128^10 = 2^73.

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sbox.hpp"
#include "spectral.hpp"

namespace sboxopt {

using uint128 = unsigned __int128;

struct FitnessValue {
  uint128 total = 0;

  friend auto operator<=>(const FitnessValue&, const FitnessValue&) = default;
  friend bool operator==(const FitnessValue&, const FitnessValue&) = default;

  FitnessValue& operator+=(FitnessValue o) {
    total += o.total;
    return *this;
  }
  friend FitnessValue operator+(FitnessValue a, FitnessValue b) { return a += b; }
};

inline std::string to_string(FitnessValue v) {
  if (v.total == 0) return "0";
  std::string s;
  for (uint128 t = v.total; t != 0; t /= 10) {
    s.push_back(static_cast<char>('0' + static_cast<int>(t % 10)));
  }
  return {s.rbegin(), s.rend()};
}

inline FitnessValue fitness_from_string(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty fitness value");
  uint128 t = 0;
  constexpr uint128 kMax = ~uint128{0};
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad fitness digit");
    const auto d = static_cast<unsigned>(c - '0');
    if (t > (kMax - d) / 10) throw std::out_of_range("fitness value overflow");
    t = t * 10 + d;
  }
  return {t};
}

struct FitnessConfig {
  int magnitude = 10;
};

// |LAT entry|^M for every possible magnitude 0..2^{n-1}.
class PowerTable {
 public:
  PowerTable(int n, int magnitude) : n_(n), magnitude_(magnitude) {
    if (magnitude < 1) {
      throw std::invalid_argument("magnitude must be >= 1");
    }
    // Each column sums to at most 2^{(n-1)M} (Parseval), so the whole
    // fitness fits if n * 2^{(n-1)M} < 2^128.
    if (static_cast<long>(n - 1) * magnitude + std::bit_width(unsigned(n)) > 127) {
      throw std::invalid_argument(
          "magnitude " + std::to_string(magnitude) +
          " overflows 128-bit fitness for n=" + std::to_string(n));
    }
    const std::size_t half = std::size_t{1} << (n - 1);
    powers_.resize(half + 1);
    for (std::size_t e = 0; e <= half; ++e) {
      uint128 p = 1;
      for (int k = 0; k < magnitude; ++k) p *= e;
      powers_[e] = p;
    }
  }

  int n() const noexcept { return n_; }
  int magnitude() const noexcept { return magnitude_; }

  // Weight of a Walsh coefficient (its LAT entry is w / 2).
  uint128 of_walsh(std::int32_t w) const {
    return powers_[static_cast<std::size_t>(w < 0 ? -w : w) >> 1];
  }

 private:
  int n_;
  int magnitude_;
  std::vector<uint128> powers_;
};

inline FitnessValue column_fitness(const WalshSpectrum& w, const PowerTable& p) {
  FitnessValue f;
  for (auto v : w.values) f.total += p.of_walsh(v);
  return f;
}

inline FitnessValue evaluate_coordinate(const SBox& s, int j, const FitnessConfig& cfg) {
  const PowerTable p(s.n(), cfg.magnitude);
  return column_fitness(walsh_transform(coordinate_truth_table(s, j)), p);
}

inline FitnessValue evaluate(const SBox& s, const FitnessConfig& cfg) {
  const PowerTable p(s.n(), cfg.magnitude);
  FitnessValue total;
  for (int j = 1; j <= s.n(); ++j) {
    total += column_fitness(walsh_transform(coordinate_truth_table(s, j)), p);
  }
  return total;
}

// Flipping f at two points x0, x1 with f(x0) != f(x1) changes exactly the
// coefficients a with <a, x0 ^ x1> = 1, each by -4 * (-1)^{f(x0) ^ <a,x0>}.
inline std::int32_t two_point_delta(std::uint32_t a, std::uint32_t x0, bool f0) {
  return (f0 ^ parity(a & x0)) ? 4 : -4;
}

// Fitness of a column after the two-point flip, without touching `w`.
inline FitnessValue column_fitness_after_flip(const WalshSpectrum& w,
                                              FitnessValue current,
                                              std::uint32_t x0, bool f0,
                                              std::uint32_t x1,
                                              const PowerTable& p) {
  const std::uint32_t diff = x0 ^ x1;
  uint128 t = current.total;
  const auto size = static_cast<std::uint32_t>(w.values.size());
  for (std::uint32_t a = 0; a < size; ++a) {
    if (!parity(a & diff)) continue;
    const auto old = w.values[a];
    t -= p.of_walsh(old);
    t += p.of_walsh(old + two_point_delta(a, x0, f0));
  }
  return {t};
}

inline void apply_two_point_flip(WalshSpectrum& w, std::uint32_t x0, bool f0,
                                 std::uint32_t x1) {
  const std::uint32_t diff = x0 ^ x1;
  const auto size = static_cast<std::uint32_t>(w.values.size());
  for (std::uint32_t a = 0; a < size; ++a) {
    if (parity(a & diff)) w.values[a] += two_point_delta(a, x0, f0);
  }
}

// Cached spectrum and fitness of a single coordinate.
struct CoordinateState {
  WalshSpectrum spectrum;
  FitnessValue fitness;
  int nonlinearity = 0;
};

inline CoordinateState coordinate_state(const SBox& s, int j, const PowerTable& p) {
  CoordinateState c;
  c.spectrum = walsh_transform(coordinate_truth_table(s, j));
  c.fitness = column_fitness(c.spectrum, p);
  c.nonlinearity = nonlinearity_of(c.spectrum);
  return c;
}

// Coordinate fitness after bit_swap_inputs(s, j, arm), computed from the
// cached state of coordinate j by the two-point update.
inline FitnessValue evaluate_after_bit_swap(const SBox& s, const CoordinateState& state,
                                            int j, std::uint32_t arm,
                                            const PowerTable& p) {
  const auto [x0, x1] = bit_swap_pair(s, j, arm);
  // Output of x0 has a 0 in coordinate j, so f_j(x0) = 0 before the swap.
  return column_fitness_after_flip(state.spectrum, state.fitness,
                                   static_cast<std::uint32_t>(x0), false,
                                   static_cast<std::uint32_t>(x1), p);
}

inline FitnessValue evaluate_after_bit_swap(const SBox& s, int j, std::uint32_t arm,
                                            const FitnessConfig& cfg) {
  const PowerTable p(s.n(), cfg.magnitude);
  return evaluate_after_bit_swap(s, coordinate_state(s, j, p), j, arm, p);
}

}  // namespace sboxopt
