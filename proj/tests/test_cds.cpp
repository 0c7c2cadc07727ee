#include <gtest/gtest.h>

#include "ltc/alpha.hpp"
#include "ltc/cds.hpp"

using namespace ltc;

namespace {

std::vector<Partition> nonempty_in_box(int m, int n) {
  std::vector<Partition> out;
  for (auto& p : partitions_in_box(m, n))
    if (!p.empty()) out.push_back(std::move(p));
  return out;
}

}  // namespace

TEST(Delta1, Examples) {
  EXPECT_EQ(delta1({4, 2, 1}), 3);
  EXPECT_EQ(delta1({1}), 1);
  EXPECT_EQ(delta1({5, 5, 5, 5, 5}), 5);
  EXPECT_THROW(delta1(Partition{}), EmptyPartitionError);
}

TEST(Cds, Examples) {
  auto p = cds({4, 2, 1});
  EXPECT_EQ(p.delta, (std::vector<int>{3, 2, 1, 1}));
  EXPECT_EQ(p.alpha, (std::vector<std::int64_t>{3, 5, 6, 7}));
  EXPECT_EQ(p.normalized, (std::vector<int>{0, 1, 2, 2}));
  EXPECT_EQ(cds({2, 2}).delta, (std::vector<int>{2, 2}));
  EXPECT_EQ(cds({3, 2, 1}).delta, (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(cds({5}).delta, (std::vector<int>{1, 1, 1, 1, 1}));
  EXPECT_THROW(cds(Partition{}), EmptyPartitionError);
}

TEST(Cds, PaddedAccessors) {
  auto p = cds({2, 2});
  EXPECT_EQ(p.delta_at(3), 0);
  EXPECT_EQ(p.normalized_at(3), 2);
  EXPECT_EQ(p.alpha_at(7), 4);
  EXPECT_EQ(p.alpha_at(0), 0);
  EXPECT_EQ(p.delta_partition(), Partition({2, 2}));
}

TEST(Cds, ProfileInvariantsAndCertificates) {
  for (const Partition& l : nonempty_in_box(7, 7)) {
    const auto p = cds(l);
    ASSERT_EQ(p.normalized.front(), 0);
    std::int64_t sum = 0;
    for (int r = 1; r <= p.length(); ++r) {
      sum += p.delta_at(r);
      if (r > 1) ASSERT_LE(p.delta_at(r), p.delta_at(r - 1));
      if (r <= p.delta1) ASSERT_GE(p.delta_at(r), p.delta1 - r + 1);
      const auto& c = p.certificates[static_cast<std::size_t>(r) - 1];
      ASSERT_EQ(c.d, c.row + c.col);
      ASSERT_EQ(p.alpha_at(r), static_cast<std::int64_t>(r) * c.d + c.mu.weight());
      ASSERT_EQ(c.mu, corner_subdiagram(l, c.row, c.col));
      // corner constraint: no in-diagram corner beats the certificate
      for (const Box& b : boxes_of(l))
        ASSERT_LE(p.alpha_at(r), static_cast<std::int64_t>(r) * (b.row + b.col) + corner_subdiagram(l, b.row, b.col).weight());
    }
    ASSERT_EQ(sum, l.weight());
  }
}

// Three independent routes to alpha_r on small shapes.
TEST(Cds, AgreesWithFlowAndBruteforce) {
  for (const Partition& l : nonempty_in_box(5, 5)) {
    const auto p = cds(l);
    const Diagram d = Diagram::of(l);
    for (int r = 1; r <= 4; ++r) {
      ASSERT_EQ(p.alpha_at(r), alpha_r_flow(d, r)) << to_string(l);
      if (d.size() <= 14) ASSERT_EQ(p.alpha_at(r), alpha_r_bruteforce(d, r)) << to_string(l);
    }
  }
}

TEST(NormalizedPrefix, MatchesFullProfile) {
  for (const Partition& l : nonempty_in_box(7, 7)) {
    const auto p = cds(l);
    const auto fast = normalized_prefix(l, 8);
    for (int r = 1; r <= 8; ++r) ASSERT_EQ(fast[static_cast<std::size_t>(r) - 1], p.normalized_at(r)) << to_string(l);
  }
}

TEST(Includes, Examples) {
  EXPECT_TRUE(includes({4, 2, 1}, {1}, 2));
  EXPECT_TRUE(includes({4, 2, 1}, Partition{}, 3));
  EXPECT_FALSE(includes({2, 2}, {1}, 1));
  EXPECT_TRUE(includes({2, 2}, {1, 1}, 1));
  EXPECT_FALSE(includes({2, 2}, {1}, -1));
  EXPECT_TRUE(excludes({4, 2, 1}, {3, 2, 1}, 0));
}

TEST(InclusionSet, Examples) {
  auto s = inclusion_set({4, 2, 1}, 2);
  ASSERT_EQ(s.entries.size(), 1u);
  EXPECT_EQ(*s.entries.begin(), (std::pair<Partition, int>{{1}, 1}));
  EXPECT_TRUE(inclusion_set({2, 2}, 2).entries.empty());
  // (1) sits at d = 0 = delta1 - 1
  auto one = inclusion_set({1}, 4);
  ASSERT_EQ(one.entries.size(), 1u);
  EXPECT_EQ(*one.entries.begin(), (std::pair<Partition, int>{{1}, 1}));
  EXPECT_THROW(inclusion_set({1}, 1), std::invalid_argument);
}

TEST(InclusionSet, PrefixFromInclusionsExamples) {
  InclusionSet one{{{{1}, 1}}, 3};
  EXPECT_EQ(normalized_prefix_from_inclusions(one, 3), (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(normalized_prefix_from_inclusions(InclusionSet{{}, 4}, 4), (std::vector<int>{0, 0, 0, 0}));
  EXPECT_EQ(normalized_prefix_from_inclusions(inclusion_set({4, 2, 1}, 4), 4), (std::vector<int>{0, 1, 2, 2}));
}

TEST(InclusionSet, PrunedSetRecoversPrefix) {
  for (const Partition& l : nonempty_in_box(7, 7)) {
    const auto p = cds(l);
    for (int r = 2; r <= 5; ++r) {
      const auto set = inclusion_set(l, r);
      for (const auto& [mu, s] : set.entries) {
        ASSERT_TRUE(s > 0 && s < r);
        ASSERT_LT(mu.weight(), static_cast<std::int64_t>(r) * s);
        ASSERT_TRUE(includes(l, mu, p.delta1 - s));
      }
      const auto got = normalized_prefix_from_inclusions(set, r);
      for (int t = 1; t <= r; ++t) ASSERT_EQ(got[static_cast<std::size_t>(t) - 1], p.normalized_at(t)) << to_string(l) << " r=" << r;
    }
  }
}

TEST(Characterization, Examples) {
  auto a = characterization_predicates({4, 2, 1});
  EXPECT_TRUE(a.includes_1_at_d1m1);
  EXPECT_TRUE(a.includes_21_at_d1m2);
  EXPECT_EQ(a.predicted_nd2, 1);
  EXPECT_EQ(a.predicted_nd3, 2);

  // (2,2): delta = (2,2), padded delta_3 = 0, so nd_3 = 2; (2,2) sits at d = 0.
  auto b = characterization_predicates({2, 2});
  EXPECT_FALSE(b.includes_1_at_d1m1);
  EXPECT_TRUE(b.includes_22_at_d1m2);
  EXPECT_TRUE(b.includes_2_or_11_at_d1m1);
  EXPECT_EQ(b.predicted_nd2, 0);
  EXPECT_EQ(b.predicted_nd3, 2);
  EXPECT_EQ(cds({2, 2}).normalized_at(3), 2);

  // (1): the corner at (0,0) is (1) at d = 0 = delta1 - 1; padded nd = (0,1,1).
  auto c = characterization_predicates({1});
  EXPECT_TRUE(c.includes_1_at_d1m1);
  EXPECT_FALSE(c.includes_21_at_d1m2);
  EXPECT_EQ(c.predicted_nd2, 1);
  EXPECT_EQ(c.predicted_nd3, 1);
  EXPECT_EQ(cds({1}).normalized_at(2), 1);
  EXPECT_EQ(cds({1}).normalized_at(3), 1);
}

TEST(Characterization, MatchesComputedPrefixOnSevenBox) {
  for (const Partition& l : nonempty_in_box(7, 7)) {
    const auto p = characterization_predicates(l);
    const auto nd = normalized_prefix(l, 3);
    ASSERT_EQ(nd[1] == 1, p.includes_1_at_d1m1) << to_string(l);
    ASSERT_EQ(nd[1], p.predicted_nd2) << to_string(l);
    ASSERT_EQ(nd[2], p.predicted_nd3) << to_string(l);
  }
}

TEST(FivecaseExclusions, Examples) {
  EXPECT_TRUE(fivecase_exclusions({4, 2, 1}).case122());
  auto e = fivecase_exclusions({1});
  EXPECT_TRUE(e.c002_excl_333 && e.c012_excl_332 && e.c112_excl_331 && e.c112_excl_322 && e.c122_excl_321);
}

TEST(FivecaseExclusions, HoldWheneverPrefixMatches) {
  std::map<std::array<int, 3>, int> seen;
  for (const Partition& l : nonempty_in_box(8, 8)) {
    const auto nd = normalized_prefix(l, 4);
    const std::array<int, 3> key{nd[1], nd[2], nd[3]};
    const auto e = fivecase_exclusions(l);
    if (key == std::array{0, 0, 2}) ASSERT_TRUE(e.case002()) << to_string(l);
    if (key == std::array{0, 1, 2}) ASSERT_TRUE(e.case012()) << to_string(l);
    if (key == std::array{0, 2, 2}) ASSERT_TRUE(e.case022()) << to_string(l);
    if (key == std::array{1, 1, 2}) ASSERT_TRUE(e.case112()) << to_string(l);
    if (key == std::array{1, 2, 2}) ASSERT_TRUE(e.case122()) << to_string(l);
    ++seen[key];
  }
  for (auto key : {std::array{0, 0, 2}, std::array{0, 1, 2}, std::array{0, 2, 2}, std::array{1, 1, 2}, std::array{1, 2, 2}})
    EXPECT_GT(seen[key], 0);
}

TEST(Census, SmallBoxes) {
  auto c2 = prefix_census(2, 6, 6);
  EXPECT_EQ(c2.prefixes.size(), 2u);
  EXPECT_TRUE(c2.prefixes.contains({0}));
  EXPECT_TRUE(c2.prefixes.contains({1}));
  EXPECT_EQ(prefix_census(1, 3, 3).prefixes.size(), 1u);
  EXPECT_THROW(prefix_census(8, 3, 3), std::invalid_argument);
  EXPECT_THROW(prefix_census(0, 3, 3), std::invalid_argument);
}

TEST(Census, ParallelMergeIsDeterministic) {
  auto a = prefix_census(5, 8, 8, 1);
  auto b = prefix_census(5, 8, 8, 3);
  ASSERT_EQ(a.prefixes.size(), b.prefixes.size());
  std::int64_t total = 0;
  for (const auto& [k, row] : a.prefixes) {
    const auto& other = b.prefixes.at(k);
    EXPECT_EQ(row.count, other.count);
    EXPECT_EQ(row.witness, other.witness);
    EXPECT_EQ(row.witness_index, other.witness_index);
    total += row.count;
  }
  EXPECT_EQ(total, 12869);
}

TEST(Census, WitnessesHaveTheirPrefix) {
  auto c = prefix_census(4, 9, 9);
  EXPECT_EQ(c.prefixes.size(), 13u);
  EXPECT_FALSE(c.prefixes.contains({0, 2, 3}));
  for (const auto& [k, row] : c.prefixes) {
    auto nd = normalized_prefix(row.witness, 4);
    EXPECT_EQ(std::vector<int>(nd.begin() + 1, nd.end()), k);
  }
}

TEST(Census, ForbiddenTable) {
  EXPECT_EQ(forbidden_quintuples().size(), 19u);
  EXPECT_EQ(kPrefixCountBounds[3], 13);
}
