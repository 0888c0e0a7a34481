#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ripr;

namespace {

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (auto i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST(Compress, Examples) {
  EXPECT_EQ(compress({-2, 0, -2, 3, 3, 0, 3, 1, -2}).terms(), (std::vector<std::int64_t>{-2, 3, 1, -2}));
  EXPECT_EQ(compress({1}).terms(), std::vector<std::int64_t>{1});
  EXPECT_EQ(compress({0, 5, 5, 0, 5}).terms(), std::vector<std::int64_t>{5});
  EXPECT_THROW(compress({0, 0}), std::invalid_argument);
}

TEST(Compress, IdempotentAndMatchesOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> v(-2, 2), len(1, 10);
  for (int t = 0; t < 2000; ++t) {
    std::vector<std::int64_t> a(len(rng));
    for (auto& x : a) x = v(rng);
    auto want = oracle::compress(a);
    if (want.empty()) {
      EXPECT_THROW(compress(a), std::invalid_argument);
      continue;
    }
    auto c = compress(a);
    EXPECT_EQ(c.terms(), want);
    EXPECT_EQ(compress(c.terms()), c);
  }
}

TEST(CompressedSeq, Validates) {
  EXPECT_THROW(CompressedSeq({}), std::invalid_argument);
  EXPECT_THROW(CompressedSeq({1, 0}), std::invalid_argument);
  EXPECT_THROW(CompressedSeq({2, 2}), std::invalid_argument);
  EXPECT_THROW(MTParams(CompressedSeq({1, -1}), true), std::invalid_argument);
  EXPECT_NO_THROW(MTParams(CompressedSeq({1, -1}), false));
}

TEST(FsImage, Examples) {
  EXPECT_EQ(oracle::ints(fs_image({1, 2, 4})), range(1, 7));
  EXPECT_EQ(oracle::ints(fs_image({2, 2})), (std::vector<std::int64_t>{2, 4}));
  auto big = fs_image({1, 4, 16, 64, 256});
  EXPECT_EQ(big.size(), 31U);
  EXPECT_EQ(oracle::ints(big), oracle::ints(oracle::fs({1, 4, 16, 64, 256})));
}

TEST(MtImage, Examples) {
  EXPECT_EQ(oracle::ints(mt_image(CompressedSeq({1}), {1, 2, 4})), range(1, 7));
  EXPECT_EQ(oracle::ints(mt_image(CompressedSeq({2, 1}), {1, 2, 4})), (std::vector<std::int64_t>{4, 6, 8, 10}));
  EXPECT_TRUE(mt_image(CompressedSeq({2, 1}), {1}).empty());
}

TEST(MtImage, KeepsNegativeValues) {
  auto img = mt_image(CompressedSeq({1, -1}), {1, 5});
  EXPECT_EQ(oracle::ints(img), std::vector<std::int64_t>{-4});
}

TEST(TranslatedMtImage, Examples) {
  EXPECT_EQ(oracle::ints(translated_mt_image(2, CompressedSeq({2, 1}), {2, 4})), std::vector<std::int64_t>{10});
  EXPECT_EQ(oracle::ints(translated_mt_image(1, CompressedSeq({1}), {1})), std::vector<std::int64_t>{2});
  EXPECT_EQ(oracle::ints(translated_mt_image(7, CompressedSeq({2, 1}), {1, 2, 4})),
            (std::vector<std::int64_t>{11, 13, 15, 17}));
  EXPECT_THROW(translated_mt_image(0, CompressedSeq({1}), {1}), std::invalid_argument);
}

TEST(FsOverSets, Examples) {
  EXPECT_EQ(oracle::ints(fs_over_sets({{1, 2}, {10}})), (std::vector<std::int64_t>{1, 2, 10, 11, 12}));
  EXPECT_EQ(oracle::ints(fs_over_sets({{5}})), std::vector<std::int64_t>{5});
  EXPECT_EQ(oracle::ints(fs_over_sets({{1}, {2}, {4}})), range(1, 7));
  EXPECT_THROW(fs_over_sets({{1}, {}}), std::invalid_argument);
}

TEST(MtOverSets, Examples) {
  EXPECT_EQ(oracle::ints(mt_over_sets(CompressedSeq({1}), {{1, 2}, {10}})),
            (std::vector<std::int64_t>{1, 2, 10, 11, 12}));
  EXPECT_EQ(oracle::ints(mt_over_sets(CompressedSeq({2, 1}), {{1}, {2}, {4}})),
            (std::vector<std::int64_t>{4, 6, 8, 10}));
  EXPECT_EQ(oracle::ints(mt_over_sets(CompressedSeq({2, 1}), {{1, 3}, {5}})), (std::vector<std::int64_t>{7, 11}));
}

TEST(RationallyProportional, Examples) {
  auto r = rationally_proportional(CompressedSeq({1, 2}), CompressedSeq({2, 4}));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, Rat::parse("1/2"));
  EXPECT_FALSE(rationally_proportional(CompressedSeq({1, 2}), CompressedSeq({2, 1})));
  EXPECT_FALSE(rationally_proportional(CompressedSeq({-2, 3}), CompressedSeq({2, -3})));
}

TEST(RationallyProportional, SymmetricAndReflexive) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> v(-4, 4), len(1, 4);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::int64_t> a(len(rng));
    for (auto& x : a) x = v(rng);
    if (oracle::compress(a).empty()) continue;
    auto ca = compress(a);
    EXPECT_EQ(rationally_proportional(ca, ca), Rat(1));
    std::vector<std::int64_t> scaled;
    for (auto x : ca.terms()) scaled.push_back(3 * x);
    CompressedSeq cb(scaled);
    auto fwd = rationally_proportional(ca, cb), back = rationally_proportional(cb, ca);
    ASSERT_TRUE(fwd && back);
    EXPECT_EQ(*fwd * *back, Rat(1));
  }
}

TEST(MtImage, AgreesWithFsForUnitSequence) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::int64_t> v(1, 20), len(1, 8);
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::int64_t> x(len(rng));
    for (auto& e : x) e = v(rng);
    EXPECT_EQ(mt_image(CompressedSeq({1}), x).values, fs_image(x).values);
  }
}

TEST(FsImage, SizeBound) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::int64_t> v(1, 12), len(1, 7);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::int64_t> x(len(rng));
    for (auto& e : x) e = v(rng);
    const std::size_t n = fs_image(x).size(), cap = (std::size_t{1} << x.size()) - 1;
    EXPECT_LE(n, cap);
    // equality iff all subset sums are distinct: count subset sums with multiplicity
    std::map<std::int64_t, int> mult;
    for (std::uint64_t m = 1; m <= cap; ++m) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (m >> i & 1) s += x[i];
      ++mult[s];
    }
    const bool distinct = std::all_of(mult.begin(), mult.end(), [](const auto& kv) { return kv.second == 1; });
    EXPECT_EQ(n == cap, distinct);
  }
}

TEST(MtImage, AgreesWithLabelingOracle) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> v(1, 9), c(-3, 3), len(1, 6), klen(1, 3);
  for (int t = 0; t < 400; ++t) {
    std::vector<std::int64_t> x(len(rng)), a(klen(rng));
    for (auto& e : x) e = v(rng);
    for (auto& e : a) e = c(rng);
    if (oracle::compress(a).empty()) continue;
    auto ca = compress(a);
    EXPECT_EQ(oracle::ints(mt_image(ca, x)), oracle::ints(oracle::mt(ca.terms(), x)));
  }
}
