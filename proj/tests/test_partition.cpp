#include <gtest/gtest.h>

#include <set>

#include "ltc/partition.hpp"

using namespace ltc;

namespace {

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Partition apply_all(Partition p, const std::vector<TransferMove>& moves) {
  for (auto m : moves) p = apply_move(p, m);
  return p;
}

}  // namespace

TEST(Partition, DropsTrailingZerosAndRejectsBadParts) {
  EXPECT_EQ(Partition({3, 1, 0, 0}), Partition({3, 1}));
  EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
  EXPECT_THROW(Partition({2, -1}), std::invalid_argument);
  EXPECT_THROW(Partition({2, 0, 1}), std::invalid_argument);
  EXPECT_EQ(Partition({4, 2, 1}).weight(), 7);
  EXPECT_TRUE(Partition{}.empty());
}

TEST(Partition, TextRoundTrip) {
  EXPECT_EQ(parse_partition("4,2,1"), Partition({4, 2, 1}));
  EXPECT_EQ(parse_partition(""), Partition{});
  EXPECT_EQ(parse_partition(" 3, 3 "), Partition({3, 3}));
  EXPECT_EQ(to_string(Partition({12, 3})), "12,3");
  EXPECT_THROW(parse_partition("3,,1"), std::invalid_argument);
  EXPECT_THROW(parse_partition("3,x"), std::invalid_argument);
  EXPECT_THROW(parse_partition("1,2"), std::invalid_argument);
}

TEST(Partition, Contains) {
  const Partition l{4, 2, 1};
  EXPECT_TRUE(l.contains({0, 3}));
  EXPECT_FALSE(l.contains({1, 2}));
  EXPECT_FALSE(Partition{}.contains({0, 0}));
  EXPECT_FALSE(l.contains({-1, 0}));
}

TEST(Antidiagonal, Examples) {
  const Partition l{4, 2, 1};
  auto a2 = antidiagonal(l, 2);
  EXPECT_EQ(a2.present, (std::vector<Box>{{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_TRUE(a2.missing.empty());
  auto a3 = antidiagonal(l, 3);
  EXPECT_EQ(a3.present, (std::vector<Box>{{0, 3}}));
  EXPECT_EQ(a3.missing, (std::vector<Box>{{1, 2}, {2, 1}, {3, 0}}));
  auto e = antidiagonal(Partition{}, 0);
  EXPECT_TRUE(e.present.empty());
  EXPECT_EQ(e.missing, (std::vector<Box>{{0, 0}}));
}

TEST(Antidiagonal, SizesAddUp) {
  for (const Partition& p : partitions_in_box(5, 5))
    for (int k = 0; k < 12; ++k) {
      auto a = antidiagonal(p, k);
      EXPECT_EQ(a.present.size() + a.missing.size(), static_cast<std::size_t>(k + 1));
    }
}

TEST(Corner, Examples) {
  const Partition l{4, 2, 1};
  EXPECT_EQ(corner_subdiagram(l, 1, 1), Partition({1}));
  EXPECT_EQ(corner_subdiagram(l, 0, 0), l);
  EXPECT_EQ(corner_subdiagram(l, 0, 1), Partition({3, 1}));
}

TEST(Corner, EmptyExactlyOutsideDiagram) {
  for (const Partition& p : partitions_in_box(5, 5)) {
    EXPECT_EQ(corner_subdiagram(p, 0, 0), p);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) EXPECT_EQ(corner_subdiagram(p, i, j).empty(), !p.contains({i, j}));
  }
}

TEST(Dominance, Examples) {
  EXPECT_TRUE(dominates({3, 2, 1, 1}, {2, 2, 2, 1}));
  EXPECT_FALSE(dominates({2, 2}, {3, 1}));
  EXPECT_TRUE(dominates({1}, {1}));
}

TEST(Dominance, PartialOrderOnEachWeight) {
  for (int n = 0; n <= 8; ++n) {
    const auto ps = partitions_of(n);
    for (const auto& a : ps) {
      EXPECT_TRUE(dominates(a, a));
      for (const auto& b : ps) {
        if (a != b && dominates(a, b)) {
          EXPECT_FALSE(dominates(b, a)) << to_string(a) << " " << to_string(b);
        }
        if (!dominates(a, b)) continue;
        for (const auto& c : ps)
          if (dominates(b, c)) {
            EXPECT_TRUE(dominates(a, c));
          }
      }
    }
  }
}

TEST(DominanceChain, Examples) {
  auto m = dominance_chain({2, 1}, {1, 1, 1});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0], (TransferMove{0, 2}));
  EXPECT_EQ(apply_all({2, 1}, m), Partition({1, 1, 1}));
  m = dominance_chain({3, 1}, {2, 2});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(apply_all({3, 1}, m), Partition({2, 2}));
  EXPECT_TRUE(dominance_chain({2, 2}, {2, 2}).empty());
}

TEST(DominanceChain, RejectsIncomparable) {
  EXPECT_THROW(dominance_chain({2, 2}, {3, 1}), std::invalid_argument);
  EXPECT_THROW(dominance_chain({3}, {2}), std::invalid_argument);
  EXPECT_THROW(apply_move({2, 2}, {0, 1}), std::invalid_argument);
}

TEST(DominanceChain, ReachesTargetExhaustively) {
  for (int n = 0; n <= 10; ++n) {
    const auto ps = partitions_of(n);
    for (const auto& a : ps)
      for (const auto& b : ps) {
        if (!dominates(a, b)) continue;
        Partition cur = a;
        for (auto mv : dominance_chain(a, b)) {
          Partition next = apply_move(cur, mv);
          ASSERT_TRUE(dominates(cur, next));
          ASSERT_TRUE(dominates(next, b));
          cur = next;
        }
        ASSERT_EQ(cur, b) << to_string(a) << " -> " << to_string(b);
      }
  }
}

TEST(Enumeration, SmallBoxes) {
  EXPECT_EQ(partitions_in_box(2, 2),
            (std::vector<Partition>{{2, 2}, {2, 1}, {2}, {1, 1}, {1}, {}}));
  EXPECT_EQ(partitions_in_box(1, 3), (std::vector<Partition>{{3}, {2}, {1}, {}}));
  EXPECT_EQ(partitions_in_box(8, 8).size(), 12870u);
}

TEST(Enumeration, CountsAreBinomialAndDistinct) {
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      auto ps = partitions_in_box(m, n);
      std::set<Partition> uniq(ps.begin(), ps.end());
      EXPECT_EQ(static_cast<std::int64_t>(ps.size()), binom(m + n, m));
      EXPECT_EQ(uniq.size(), ps.size());
      for (const auto& p : ps) EXPECT_TRUE(p.length() <= m && p.part(0) <= n);
      EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end(), std::greater<>()));
    }
}

TEST(Enumeration, PartitionsOfMatchesKnownCounts) {
  const std::vector<std::size_t> p = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(partitions_of(n).size(), p[static_cast<std::size_t>(n)]);
}

TEST(Conjugate, ExamplesAndInvolution) {
  EXPECT_EQ(conjugate({4, 2, 1}), Partition({3, 2, 1, 1}));
  EXPECT_EQ(conjugate({5}), Partition({1, 1, 1, 1, 1}));
  EXPECT_EQ(conjugate(Partition{}), Partition{});
  for (const auto& p : partitions_in_box(6, 6)) EXPECT_EQ(conjugate(conjugate(p)), p);
}
