#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include <sboxopt/corpus.hpp>
#include <sboxopt/rng.hpp>
#include <sboxopt/sbox.hpp>
#include <sboxopt/spectral.hpp>

#include "oracles.hpp"

using namespace sboxopt;

namespace {

bool is_permutation(const SBox& s) {
  std::vector<std::uint16_t> v(s.dlut().begin(), s.dlut().end());
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != i) return false;
  }
  return true;
}

}  // namespace

TEST(Parse, AesTokens) {
  const auto text = serialize_sbox(corpus_get("aes").sbox, Layout::flat);
  ASSERT_TRUE(text.starts_with("63 7c 77 7b f2 6b 6f c5"));
  const auto s = parse_sbox(text);
  EXPECT_EQ(s.n(), 8);
  EXPECT_EQ(s[0], 0x63);
}

TEST(Parse, IdentityN3) {
  const auto s = parse_sbox("00 01 02 03 04 05 06 07");
  EXPECT_EQ(s.n(), 3);
  EXPECT_EQ(s, SBox::identity(3));
}

TEST(Parse, CommentsAndCase) {
  const auto s = parse_sbox("# header line\n00 01 02 03 # trailing\n04 05\n06 07\n");
  EXPECT_EQ(s, SBox::identity(3));
  const auto upper = parse_sbox("0A 0B 0C 0D 0E 0F 00 01 02 03 04 05 06 07 08 09");
  EXPECT_EQ(upper.n(), 4);
  EXPECT_EQ(upper[0], 0xa);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_sbox("00 00 02 03 04 05 06 07"), SBoxError);  // duplicate
  EXPECT_THROW(parse_sbox("00 00 02 03"), SBoxError);              // n = 2 unsupported
  EXPECT_THROW(parse_sbox("00 01 02 03 04 05 06"), SBoxError);     // 7 tokens
  EXPECT_THROW(parse_sbox("00 01 02 03 04 05 06 08"), SBoxError);  // out of range
  EXPECT_THROW(parse_sbox("00 01 02 03 04 05 06 zz"), SBoxError);  // not hex
  EXPECT_THROW(parse_sbox(""), SBoxError);
  EXPECT_THROW(parse_sbox("# only a comment\n"), SBoxError);
}

TEST(Serialize, IdentityGrid16) {
  const auto text = serialize_sbox(SBox::identity(8), Layout::grid16);
  std::vector<std::string> lines;
  std::string line;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(line);
      line.clear();
    } else {
      line.push_back(c);
    }
  }
  ASSERT_EQ(lines.size(), 16u);
  EXPECT_EQ(lines[0], "00 01 02 03 04 05 06 07 08 09 0a 0b 0c 0d 0e 0f");
  EXPECT_EQ(lines[15], "f0 f1 f2 f3 f4 f5 f6 f7 f8 f9 fa fb fc fd fe ff");
}

TEST(Serialize, Grid16RequiresN8) {
  EXPECT_THROW(serialize_sbox(SBox::identity(4), Layout::grid16), SBoxError);
  EXPECT_EQ(serialize_sbox(SBox::identity(3), Layout::flat), "0 1 2 3 4 5 6 7\n");
}

TEST(Serialize, ScMatchesFigureRows) {
  const auto text = serialize_sbox(corpus_get("paper_sc").sbox, Layout::grid16);
  EXPECT_TRUE(text.starts_with("ab f0 5e 3f fa e2 6f 8e 3c 36 30 db 29 73 da 45\n"
                               "87 f9 60 3b bf a4 c7 0c a9 c0 f3 cb 68 ff ee a6\n"));
  EXPECT_TRUE(text.ends_with("8d d6 15 fb 9d 5d 8c 42 08 b6 eb a7 b5 e5 52 82\n"));
}

TEST(Serialize, RoundTripProperty) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(8));  // 3..10
    const auto s = random_sbox(n, rng);
    EXPECT_EQ(parse_sbox(serialize_sbox(s, Layout::flat)), s);
    if (n == 8) {
      EXPECT_EQ(parse_sbox(serialize_sbox(s, Layout::grid16)), s);
    }
  }
  for (const auto& id : corpus_list()) {
    const auto s = corpus_get(id).sbox;
    EXPECT_EQ(parse_sbox(serialize_sbox(s)), s) << id;
  }
}

TEST(Transposition, SwapsTwoEntries) {
  const auto s = apply_transposition(SBox::identity(3), 0, 1);
  const std::vector<std::uint16_t> expected{1, 0, 2, 3, 4, 5, 6, 7};
  EXPECT_TRUE(std::equal(s.dlut().begin(), s.dlut().end(), expected.begin()));
  EXPECT_EQ(s.preimage(1), 0);
  EXPECT_EQ(s.preimage(0), 1);
}

TEST(Transposition, InvolutionAndPermutationProperty) {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const auto s = random_sbox(n, rng);
    const auto i = rng.below(s.size());
    auto j = rng.below(s.size() - 1);
    if (j >= i) ++j;
    const auto t = apply_transposition(s, i, j);
    EXPECT_TRUE(is_permutation(t));
    EXPECT_EQ(apply_transposition(t, i, j), s);
    for (std::size_t x = 0; x < s.size(); ++x) {
      if (x != i && x != j) {
        EXPECT_EQ(s[x], t[x]);
      }
    }
  }
}

TEST(Transposition, Errors) {
  const auto s = SBox::identity(3);
  EXPECT_THROW(apply_transposition(s, 2, 2), SBoxError);
  EXPECT_THROW(apply_transposition(s, 0, 8), SBoxError);
}

TEST(BitSwap, WorkedExample) {
  // Coordinate 1, arm 010: outputs 1010 (1-based index 14) and 0010 (index 4).
  const auto x = fixtures::x_dlut();
  const auto pair = bit_swap_pair(x, 1, 0b010);
  EXPECT_EQ(pair.x0 + 1, 4u);
  EXPECT_EQ(pair.x1 + 1, 14u);
  const auto y = bit_swap_inputs(x, 1, 0b010);
  EXPECT_EQ(y[3], 10);
  EXPECT_EQ(y[13], 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i != 3 && i != 13) {
      EXPECT_EQ(x[i], y[i]);
    }
  }
}

TEST(BitSwap, IdentityN3) {
  const auto s = bit_swap_inputs(SBox::identity(3), 1, 0b00);
  const std::vector<std::uint16_t> expected{4, 1, 2, 3, 0, 5, 6, 7};
  EXPECT_TRUE(std::equal(s.dlut().begin(), s.dlut().end(), expected.begin()));
}

TEST(BitSwap, Errors) {
  const auto s = SBox::identity(3);
  EXPECT_THROW(bit_swap_inputs(s, 0, 0), SBoxError);
  EXPECT_THROW(bit_swap_inputs(s, 4, 0), SBoxError);
  EXPECT_THROW(bit_swap_inputs(s, 1, 4), SBoxError);
}

// Every arm of every bandit, for a spread of dimensions: the move is an
// involution, keeps bijectivity, leaves other coordinates' truth tables
// untouched and flips the chosen coordinate in exactly two positions.
TEST(BitSwap, CoordinateIsolationProperty) {
  Rng rng(99);
  for (int n = 3; n <= 8; ++n) {
    for (int trial = 0; trial < (n <= 6 ? 20 : 3); ++trial) {
      const auto s = random_sbox(n, rng);
      for (int j = 1; j <= n; ++j) {
        for (std::uint32_t arm = 0; arm < (1u << (n - 1)); ++arm) {
          const auto t = bit_swap_inputs(s, j, arm);
          ASSERT_TRUE(is_permutation(t));
          ASSERT_EQ(bit_swap_inputs(t, j, arm), s);
          for (int k = 1; k <= n; ++k) {
            const auto before = coordinate_truth_table(s, k);
            const auto after = coordinate_truth_table(t, k);
            int diff = 0;
            for (std::size_t x = 0; x < before.size(); ++x) diff += before.bits[x] != after.bits[x];
            ASSERT_EQ(diff, k == j ? 2 : 0) << "n=" << n << " j=" << j << " k=" << k;
          }
        }
      }
    }
  }
}
