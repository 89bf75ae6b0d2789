#pragma once

// Bijective (n,n) substitution boxes, the .sbx text format and the two
// mutation moves shared by the optimizers.
//
// Bit convention used throughout the library: bit position 1 is the most
// significant of the n bits, so coordinate j of an S-box is bit (n - j) of
// each output word counted from the LSB.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cctype>
#include <istream>
#include <iterator>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sboxopt {

inline constexpr int kMinDimension = 3;
inline constexpr int kMaxDimension = 16;

class SBoxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mask selecting coordinate `j` (1-based, MSB first) in an n-bit word.
constexpr std::uint32_t coordinate_mask(int n, int j) noexcept {
  return std::uint32_t{1} << (n - j);
}

inline void check_dimension(int n) {
  if (n < kMinDimension || n > kMaxDimension) {
    throw SBoxError("unsupported dimension n=" + std::to_string(n) +
                    " (supported: " + std::to_string(kMinDimension) + ".." +
                    std::to_string(kMaxDimension) + ")");
  }
}

class SBox {
 public:
  using value_type = std::uint16_t;

  // Validates bijectivity; infers n from the table length.
  explicit SBox(std::vector<value_type> dlut) : dlut_(std::move(dlut)) {
    const auto size = dlut_.size();
    if (size == 0 || (size & (size - 1)) != 0) {
      throw SBoxError("table length " + std::to_string(size) +
                      " is not a power of two");
    }
    n_ = std::countr_zero(size);
    check_dimension(n_);
    inverse_.assign(size, 0);
    std::vector<bool> seen(size, false);
    for (std::size_t x = 0; x < size; ++x) {
      const auto y = dlut_[x];
      if (y >= size) {
        throw SBoxError("value " + std::to_string(y) + " at index " +
                        std::to_string(x) + " out of range for n=" +
                        std::to_string(n_));
      }
      if (seen[y]) {
        throw SBoxError("duplicate value " + std::to_string(y) + " at index " +
                        std::to_string(x) + " (not bijective)");
      }
      seen[y] = true;
      inverse_[y] = static_cast<value_type>(x);
    }
  }

  static SBox identity(int n) {
    check_dimension(n);
    std::vector<value_type> t(std::size_t{1} << n);
    std::iota(t.begin(), t.end(), value_type{0});
    return SBox(std::move(t));
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return dlut_.size(); }

  value_type operator[](std::size_t x) const { return dlut_[x]; }
  value_type preimage(std::size_t y) const { return inverse_[y]; }

  std::span<const value_type> dlut() const noexcept { return dlut_; }

  // In-place exchange of two outputs. Keeps the inverse index coherent, so
  // the result is always bijective.
  void swap_entries(std::size_t i, std::size_t j) {
    std::swap(dlut_[i], dlut_[j]);
    inverse_[dlut_[i]] = static_cast<value_type>(i);
    inverse_[dlut_[j]] = static_cast<value_type>(j);
  }

  friend bool operator==(const SBox& a, const SBox& b) {
    return a.dlut_ == b.dlut_;
  }

 private:
  int n_ = 0;
  std::vector<value_type> dlut_;
  std::vector<value_type> inverse_;
};

struct FrozenPrefix {
  std::size_t k = 0;

  bool frozen(std::size_t index) const noexcept { return index < k; }
};

// The two inputs whose outputs differ only in coordinate `coordinate`, for a
// given arm. Arm bits are the remaining n-1 output bits read MSB first.
struct BitSwapPair {
  std::size_t x0;  // input whose output has a 0 in the coordinate bit
  std::size_t x1;
};

inline std::uint32_t arm_output(int n, int coordinate, std::uint32_t arm) {
  const int b = n - coordinate;
  const std::uint32_t low = arm & ((std::uint32_t{1} << b) - 1);
  const std::uint32_t high = arm >> b;
  return (high << (b + 1)) | low;
}

inline void check_bit_swap(const SBox& s, int coordinate, std::uint32_t arm) {
  if (coordinate < 1 || coordinate > s.n()) {
    throw SBoxError("coordinate " + std::to_string(coordinate) +
                    " out of range [1," + std::to_string(s.n()) + "]");
  }
  if (arm >= (std::uint32_t{1} << (s.n() - 1))) {
    throw SBoxError("arm " + std::to_string(arm) + " out of range for n=" +
                    std::to_string(s.n()));
  }
}

inline BitSwapPair bit_swap_pair(const SBox& s, int coordinate,
                                 std::uint32_t arm) {
  check_bit_swap(s, coordinate, arm);
  const auto v0 = arm_output(s.n(), coordinate, arm);
  const auto v1 = v0 | coordinate_mask(s.n(), coordinate);
  return {s.preimage(v0), s.preimage(v1)};
}

inline SBox apply_transposition(const SBox& s, std::size_t i, std::size_t j) {
  if (i >= s.size() || j >= s.size()) {
    throw SBoxError("transposition index out of range");
  }
  if (i == j) {
    throw SBoxError("transposition requires distinct indices");
  }
  SBox out = s;
  out.swap_entries(i, j);
  return out;
}

inline SBox bit_swap_inputs(const SBox& s, int coordinate, std::uint32_t arm) {
  const auto [x0, x1] = bit_swap_pair(s, coordinate, arm);
  SBox out = s;
  out.swap_entries(x0, x1);
  return out;
}

// --- .sbx text format ------------------------------------------------------

// Comments run from '#' to end of line. Tokens are whitespace separated hex
// numbers; n is inferred from the token count.
inline SBox parse_sbox(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  bool comment = false;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (comment) {
      comment = c != '\n';
    } else if (c == '#') {
      flush();
      comment = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();

  const auto count = tokens.size();
  if (count == 0 || (count & (count - 1)) != 0) {
    throw SBoxError("token count " + std::to_string(count) +
                    " is not a power of two");
  }
  const int n = std::countr_zero(count);
  check_dimension(n);

  std::vector<SBox::value_type> dlut;
  dlut.reserve(count);
  for (const auto& tok : tokens) {
    std::string_view t = tok;
    if (t.empty() || t.size() > 4 ||
        !std::all_of(t.begin(), t.end(), [](char c) {
          return std::isxdigit(static_cast<unsigned char>(c)) != 0;
        })) {
      throw SBoxError("invalid hex token '" + tok + "'");
    }
    const auto v = std::stoul(std::string(t), nullptr, 16);
    if (v >= count) {
      throw SBoxError("token '" + tok + "' out of range for n=" +
                      std::to_string(n));
    }
    dlut.push_back(static_cast<SBox::value_type>(v));
  }
  return SBox(std::move(dlut));
}

inline SBox read_sbox(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return parse_sbox(text);
}

enum class Layout { flat, grid16 };

// Lowercase hex, ceil(n/4) digits per token, single spaces. grid16 emits
// 16 tokens per line and needs n = 8; flat puts everything on one line.
inline std::string serialize_sbox(const SBox& s, Layout layout = Layout::grid16) {
  if (layout == Layout::grid16 && s.n() != 8) {
    throw SBoxError("grid16 layout requires n=8, got n=" +
                    std::to_string(s.n()));
  }
  static constexpr char kHex[] = "0123456789abcdef";
  const int digits = (s.n() + 3) / 4;
  std::string out;
  out.reserve(s.size() * (digits + 1));
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (x != 0) {
      out.push_back(layout == Layout::grid16 && x % 16 == 0 ? '\n' : ' ');
    }
    for (int d = digits - 1; d >= 0; --d) {
      out.push_back(kHex[(s[x] >> (4 * d)) & 0xf]);
    }
  }
  out.push_back('\n');
  return out;
}

}  // namespace sboxopt
