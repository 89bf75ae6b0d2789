#pragma once

// Boolean-function and S-box spectral analysis: truth tables, the fast
// Walsh-Hadamard transform, the linear approximation table, nonlinearity,
// average coordinate nonlinearity and the strict avalanche criterion.
//
// All arithmetic is exact. LAT entries are half Walsh coefficients:
//   LAT[a][c] = 2^{n-1} - d_H(<a,x>, <c,S(x)>) = W_c(a) / 2.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include <boost/rational.hpp>

#include "sbox.hpp"

namespace sboxopt {

using Rational = boost::rational<std::int64_t>;

struct TruthTable {
  int n = 0;
  std::vector<std::uint8_t> bits;  // bits[x] = f(x), x in lexicographic order

  std::size_t size() const noexcept { return bits.size(); }
  friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

struct WalshSpectrum {
  int n = 0;
  std::vector<std::int32_t> values;  // values[a] = sum_x (-1)^{f(x) ^ <a,x>}

  friend bool operator==(const WalshSpectrum&, const WalshSpectrum&) = default;
};

inline int parity(std::uint32_t v) noexcept { return std::popcount(v) & 1; }

// Component <mask, S(x)>; a coordinate is a mask with one bit set.
inline TruthTable component_truth_table(const SBox& s, std::uint32_t mask) {
  TruthTable t{s.n(), std::vector<std::uint8_t>(s.size())};
  for (std::size_t x = 0; x < s.size(); ++x) {
    t.bits[x] = static_cast<std::uint8_t>(parity(s[x] & mask));
  }
  return t;
}

inline TruthTable coordinate_truth_table(const SBox& s, int j) {
  if (j < 1 || j > s.n()) {
    throw SBoxError("coordinate " + std::to_string(j) + " out of range [1," +
                    std::to_string(s.n()) + "]");
  }
  return component_truth_table(s, coordinate_mask(s.n(), j));
}

// In-place butterfly over a +/-1 vector.
inline void fast_walsh_hadamard(std::vector<std::int32_t>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t k = i; k < i + h; ++k) {
        const auto a = v[k];
        const auto b = v[k + h];
        v[k] = a + b;
        v[k + h] = a - b;
      }
    }
  }
}

inline WalshSpectrum walsh_transform(const TruthTable& t) {
  WalshSpectrum w{t.n, std::vector<std::int32_t>(t.size())};
  for (std::size_t x = 0; x < t.size(); ++x) w.values[x] = t.bits[x] ? -1 : 1;
  fast_walsh_hadamard(w.values);
  return w;
}

inline std::int32_t max_abs_walsh(const WalshSpectrum& w) {
  std::int32_t m = 0;
  for (auto v : w.values) m = std::max(m, std::abs(v));
  return m;
}

inline int nonlinearity_of(const WalshSpectrum& w) {
  return (1 << (w.n - 1)) - max_abs_walsh(w) / 2;
}

inline int nonlinearity_of(const TruthTable& t) {
  return nonlinearity_of(walsh_transform(t));
}

// Stored column-major: column(c) is the half-spectrum of component c.
class LinearApproximationTable {
 public:
  explicit LinearApproximationTable(const SBox& s)
      : n_(s.n()), size_(s.size()), entries_(size_ * size_) {
    for (std::uint32_t c = 0; c < size_; ++c) {
      auto w = walsh_transform(component_truth_table(s, c));
      auto* col = entries_.data() + std::size_t{c} * size_;
      for (std::size_t a = 0; a < size_; ++a) col[a] = w.values[a] / 2;
    }
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }

  std::int32_t at(std::size_t a, std::size_t c) const {
    return entries_[c * size_ + a];
  }

  std::span<const std::int32_t> column(std::size_t c) const {
    return {entries_.data() + c * size_, size_};
  }

 private:
  int n_;
  std::size_t size_;
  std::vector<std::int32_t> entries_;
};

inline LinearApproximationTable lat(const SBox& s) {
  return LinearApproximationTable(s);
}

// Minimum over all nonzero components, ignoring row 0 (excluded from the
// maximum, as the LAT definition of S-box nonlinearity requires).
inline int sbox_nonlinearity(const SBox& s) {
  std::int32_t worst = 0;
  for (std::uint32_t c = 1; c < s.size(); ++c) {
    auto w = walsh_transform(component_truth_table(s, c));
    for (std::size_t a = 1; a < w.values.size(); ++a) {
      worst = std::max(worst, std::abs(w.values[a]));
    }
  }
  return (1 << (s.n() - 1)) - worst / 2;
}

inline std::vector<int> coordinate_nonlinearities(const SBox& s) {
  std::vector<int> out;
  out.reserve(s.n());
  for (int j = 1; j <= s.n(); ++j) {
    out.push_back(nonlinearity_of(coordinate_truth_table(s, j)));
  }
  return out;
}

inline Rational acnv(const std::vector<int>& coordinate_nls) {
  std::int64_t sum = 0;
  for (int v : coordinate_nls) sum += v;
  return Rational(sum, static_cast<std::int64_t>(coordinate_nls.size()));
}

inline Rational acnv(const SBox& s) { return acnv(coordinate_nonlinearities(s)); }

struct SacResult {
  // matrix[i][j]: probability that flipping input bit i+1 flips output bit j+1
  std::vector<std::vector<Rational>> matrix;
  Rational average;
};

inline SacResult sac(const SBox& s) {
  const int n = s.n();
  const auto size = static_cast<std::int64_t>(s.size());
  SacResult r;
  r.matrix.assign(n, std::vector<Rational>(n));
  std::int64_t total = 0;
  for (int i = 1; i <= n; ++i) {
    const auto flip = coordinate_mask(n, i);
    std::vector<std::int64_t> counts(n, 0);
    for (std::uint32_t x = 0; x < s.size(); ++x) {
      const auto d = static_cast<std::uint32_t>(s[x] ^ s[x ^ flip]);
      for (int j = 1; j <= n; ++j) {
        counts[j - 1] += (d & coordinate_mask(n, j)) ? 1 : 0;
      }
    }
    for (int j = 0; j < n; ++j) {
      r.matrix[i - 1][j] = Rational(counts[j], size);
      total += counts[j];
    }
  }
  r.average = Rational(total, size * n * n);
  return r;
}

}  // namespace sboxopt
