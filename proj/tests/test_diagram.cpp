#include <gtest/gtest.h>

#include <random>

#include "ltc/alpha.hpp"
#include "ltc/box_set.hpp"
#include "ltc/coloring_search.hpp"
#include "ltc/diagram.hpp"
#include "ltc/flow.hpp"

using namespace ltc;

namespace {

Coloring sample_coloring() {
  // 1 2 3 4 / 3 4 / 2
  return Coloring({{{0, 0}, 1}, {{0, 1}, 2}, {{0, 2}, 3}, {{0, 3}, 4}, {{1, 0}, 3}, {{1, 1}, 4}, {{2, 0}, 2}});
}

Diagram random_diagram(std::mt19937& rng, int rows, int cols, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<Box> boxes;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (keep(rng)) boxes.push_back({i, j});
  return Diagram(boxes);
}

}  // namespace

TEST(Diagram, ConstructionAndText) {
  EXPECT_THROW(Diagram({{0, 0}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(Diagram({{-1, 0}}), std::invalid_argument);
  const Diagram d = parse_diagram("0,2;0,4;1,2");
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(to_string(d), "0,2;0,4;1,2");
  EXPECT_EQ(parse_diagram(to_string(cds531_diagram())), cds531_diagram());
  EXPECT_THROW(parse_diagram("0;1"), std::invalid_argument);
  EXPECT_EQ(Diagram::of({4, 2, 1}).size(), 7u);
  EXPECT_EQ(cds6631_diagram().size(), 16u);
}

TEST(Coloring, ShapeOf) {
  EXPECT_EQ(shape_of(sample_coloring()), Partition({2, 2, 2, 1}));
  EXPECT_EQ(shape_of(Coloring({{{0, 0}, 1}})), Partition({1}));
  EXPECT_EQ(shape_of(Coloring({{{0, 0}, 1}, {{1, 1}, 1}, {{0, 1}, 2}, {{1, 0}, 2}})), Partition({2, 2}));
  EXPECT_TRUE(sample_coloring().is_valid());
}

TEST(Coloring, ConflictsAreNamed) {
  Coloring k({{{0, 0}, 1}, {{0, 2}, 1}});
  EXPECT_FALSE(k.is_valid());
  EXPECT_NE(k.first_conflict().find("row 0"), std::string::npos);
  Coloring c({{{0, 1}, 5}, {{3, 1}, 5}});
  EXPECT_NE(c.first_conflict().find("column 1"), std::string::npos);
  EXPECT_THROW(k.set({1, 1}, 0), std::invalid_argument);
}

TEST(Coloring, CanonicalizeOrdersBySizeThenFirstBox) {
  Coloring k({{{0, 0}, 7}, {{0, 1}, 3}, {{1, 0}, 3}, {{0, 2}, 9}});
  Coloring c = canonicalize(k);
  EXPECT_EQ(c.color_of({0, 1}), 1);
  EXPECT_EQ(c.color_of({1, 0}), 1);
  EXPECT_EQ(c.color_of({0, 0}), 2);
  EXPECT_EQ(c.color_of({0, 2}), 3);
}

TEST(Stable, Examples) {
  const Diagram d = Diagram::of({4, 2, 1});
  EXPECT_TRUE(is_stable(d, {{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_FALSE(is_stable(d, {{0, 0}, {0, 1}}));
  EXPECT_TRUE(is_stable(d, {}));
  EXPECT_THROW(is_stable(d, {{5, 5}}), std::invalid_argument);
}

TEST(Alpha, FlowExamples) {
  EXPECT_EQ(alpha_r_flow(cds531_diagram(), 1), 5);
  EXPECT_EQ(alpha_r_flow(cds531_diagram(), 2), 8);
  EXPECT_EQ(alpha_r_flow(cds531_diagram(), 3), 9);
  EXPECT_EQ(alpha_r_flow(Diagram::of({4, 2, 1}), 2), 5);
  EXPECT_THROW(alpha_r_flow(Diagram{}, 0), std::invalid_argument);
}

TEST(Alpha, BruteforceExamples) {
  EXPECT_EQ(alpha_r_bruteforce(Diagram::of({2, 2}), 2), 4);
  EXPECT_EQ(alpha_r_bruteforce(cds531_diagram(), 3), 9);
  EXPECT_EQ(alpha_r_bruteforce(Diagram{}, 3), 0);
  EXPECT_EQ(alpha_r_bruteforce(Diagram::of({4, 2, 1}), 2), 5);
  EXPECT_THROW(alpha_r_bruteforce(Diagram::of({5, 5, 5, 5, 1}), 2), DiagramTooLarge);
  EXPECT_NO_THROW(alpha_r_bruteforce(Diagram::of({5, 5, 5, 5, 1}), 1, 21));
}

TEST(Alpha, FlowAgreesWithBruteforceOnRandomDiagrams) {
  std::mt19937 rng(20240607);
  for (int trial = 0; trial < 400; ++trial) {
    Diagram d = random_diagram(rng, 5, 5, 0.45);
    if (d.size() > 12) continue;
    for (int r = 1; r <= 4; ++r) ASSERT_EQ(alpha_r_flow(d, r), alpha_r_bruteforce(d, r)) << to_string(d) << " r=" << r;
  }
}

TEST(Alpha, MonotoneWithBoundedIncrements) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Diagram d = random_diagram(rng, 7, 7, 0.5);
    const auto a1 = alpha_r_flow(d, 1);
    for (int r = 1; r <= 6; ++r) {
      const auto a = alpha_r_flow(d, r);
      const auto b = alpha_r_flow(d, r + 1);
      EXPECT_LE(a, b);
      EXPECT_LE(b, a + a1);
    }
  }
}

TEST(Alpha, DifferencesDecreaseOnPartitions) {
  for (const Partition& p : partitions_in_box(7, 7)) {
    if (p.empty()) continue;
    const Diagram d = Diagram::of(p);
    std::int64_t prev = 0;
    std::int64_t last_gap = d.size();
    for (int r = 1; prev < static_cast<std::int64_t>(d.size()); ++r) {
      const auto a = alpha_r_flow(d, r);
      ASSERT_LE(a - prev, last_gap) << to_string(p);
      last_gap = a - prev;
      prev = a;
    }
  }
}

// A stable set meets the complement of the (i,j) corner in at most i+j boxes.
TEST(Alpha, StableSetsLeaveFewBoxesOutsideCorners) {
  std::mt19937 rng(11);
  for (const Partition& p : partitions_in_box(6, 6)) {
    if (p.empty()) continue;
    auto boxes = boxes_of(p);
    for (int sample = 0; sample < 4; ++sample) {
      // random maximal stable set: greedy over a shuffled order
      std::shuffle(boxes.begin(), boxes.end(), rng);
      std::vector<Box> s;
      for (const Box& b : boxes) {
        s.push_back(b);
        if (!is_stable(s)) s.pop_back();
      }
      for (const Box& c : boxes_of(p)) {
        int outside = 0;
        for (const Box& b : s) outside += (b.row < c.row || b.col < c.col) ? 1 : 0;
        ASSERT_LE(outside, c.row + c.col);
      }
    }
  }
}

TEST(Flow, EdgeColoringSplitsIntoStableSets) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Diagram d = random_diagram(rng, 8, 8, 0.6);
    for (int cap = 1; cap <= 4; ++cap) {
      auto sub = degree_bounded_subgraph(d.boxes(), cap);
      auto parts = edge_color_bipartite(sub, cap);
      ASSERT_EQ(parts.size(), static_cast<std::size_t>(cap));
      std::size_t total = 0;
      for (const auto& s : parts) {
        ASSERT_TRUE(is_stable(s));
        total += s.size();
      }
      ASSERT_EQ(total, sub.size());
    }
    EXPECT_EQ(static_cast<std::int64_t>(maximum_stable_set(d.boxes()).size()), alpha_r_flow(d, 1));
  }
}

TEST(BoxSet, Basics) {
  BoxSet s(130);
  s.set(0), s.set(64), s.set(129);
  EXPECT_EQ(s.count(), 3u);
  EXPECT_TRUE(s.test(64));
  s.reset(64);
  EXPECT_FALSE(s.test(64));
  EXPECT_EQ(BoxSet::full(130).count(), 130u);
  EXPECT_EQ(s.count_and(BoxSet::full(130)), 2u);
}

TEST(ColoringSearch, Examples) {
  EXPECT_FALSE(exists_coloring_with_shape(cds531_diagram(), {5, 3, 1}));
  EXPECT_FALSE(exists_coloring_with_shape(cds6631_diagram(), {6, 6, 3, 1}));
  auto k = exists_coloring_with_shape(Diagram::of({4, 2, 1}), {3, 2, 1, 1});
  ASSERT_TRUE(k);
  EXPECT_TRUE(k->is_valid());
  EXPECT_EQ(shape_of(*k), Partition({3, 2, 1, 1}));
  auto c = exists_coloring_with_shape(cds531_diagram(), {4, 4, 1});
  ASSERT_TRUE(c);
  EXPECT_EQ(shape_of(*c), Partition({4, 4, 1}));
  EXPECT_THROW(exists_coloring_with_shape(cds531_diagram(), {5, 3}), WeightMismatch);
}

TEST(ColoringSearch, ResultShapeAlwaysMatchesTarget) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    Diagram d = random_diagram(rng, 4, 4, 0.6);
    for (const Partition& mu : partitions_of(static_cast<int>(d.size()))) {
      auto k = exists_coloring_with_shape(d, mu);
      if (!k) continue;
      ASSERT_TRUE(k->is_valid());
      ASSERT_EQ(shape_of(*k), mu);
      std::vector<Box> cover;
      for (const auto& [b, c] : k->assignment()) cover.push_back(b);
      ASSERT_EQ(Diagram(cover), d);
    }
  }
}
