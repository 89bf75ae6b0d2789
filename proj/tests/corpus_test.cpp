#include <gtest/gtest.h>

#include <set>

#include <sboxopt/corpus.hpp>
#include <sboxopt/metrics.hpp>

using namespace sboxopt;

TEST(Corpus, Ids) {
  const auto ids = corpus_list();
  EXPECT_EQ(ids.size(), 10u);
  EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), ids.size());
  for (const auto& id : ids) {
    EXPECT_TRUE(corpus_contains(id));
    const auto e = corpus_get(id);
    EXPECT_EQ(e.id, id);
    EXPECT_EQ(e.sbox.n(), 8);
    EXPECT_FALSE(e.provenance.empty());
  }
  EXPECT_FALSE(corpus_contains("des"));
  EXPECT_THROW(corpus_get("des"), SBoxError);
}

TEST(Corpus, KnownEntries) {
  const auto sc = corpus_get("paper_sc").sbox;
  EXPECT_EQ(sc[0x00], 0xab);
  EXPECT_EQ(sc[0x0f], 0x45);
  EXPECT_EQ(sc[0xf5], 0x5d);
  const auto aes = corpus_get("aes").sbox;
  EXPECT_EQ(aes[0x00], 0x63);
  EXPECT_EQ(aes[0x53], 0xed);
  EXPECT_EQ(aes[0xff], 0x16);
}

TEST(Corpus, OptimizedTablesKeepTheFrozenRow) {
  for (const char* base : {"aes", "whirlpool", "fantomas", "skipjack"}) {
    const auto a = corpus_get(base).sbox;
    const auto b = corpus_get(std::string("paper_") + base + "_opt").sbox;
    for (std::size_t i = 0; i < 16; ++i) {
      EXPECT_EQ(a[i], b[i]) << base << " " << i;
    }
    EXPECT_NE(a, b);
  }
}

TEST(Corpus, ExpectedMetricsMatchRecomputation) {
  for (const auto& id : corpus_list()) {
    const auto e = corpus_get(id);
    const auto m = compute_metrics(e.sbox);
    if (e.expected.coordinate_nls) {
      EXPECT_EQ(m.coordinate_nls, *e.expected.coordinate_nls) << id;
    }
    if (e.expected.acnv) {
      EXPECT_EQ(m.acnv, *e.expected.acnv) << id;
    }
    if (e.expected.nl) {
      EXPECT_EQ(m.nl, *e.expected.nl) << id;
    }
    if (e.expected.sac_average) {
      EXPECT_EQ(m.sac_average, *e.expected.sac_average) << id;
    }
  }
}

// Values computed independently from the published tables.
TEST(Corpus, ClassicalMetrics) {
  const auto w = compute_metrics(corpus_get("whirlpool").sbox);
  EXPECT_EQ(w.coordinate_nls, (std::vector<int>{104, 106, 108, 108, 102, 100, 100, 108}));
  EXPECT_EQ(w.acnv, Rational(209, 2));
  EXPECT_EQ(w.nl, 100);
  EXPECT_EQ(compute_metrics(corpus_get("skipjack").sbox).acnv, Rational(423, 4));
  EXPECT_EQ(compute_metrics(corpus_get("skipjack").sbox).nl, 100);
  EXPECT_EQ(compute_metrics(corpus_get("fantomas").sbox).acnv, Rational(98));
  EXPECT_EQ(compute_metrics(corpus_get("fantomas").sbox).nl, 96);
}

TEST(Corpus, BestComposedEntryOrdering) {
  // Reversing the MSB-first vector gives the least-significant-bit-first listing.
  const auto m = compute_metrics(corpus_get("paper_sc_best").sbox);
  const std::vector<int> reversed(m.coordinate_nls.rbegin(), m.coordinate_nls.rend());
  EXPECT_EQ(reversed, (std::vector<int>{116, 114, 116, 114, 114, 114, 114, 114}));
  EXPECT_EQ(m.nl, 92);
}
