#include "deltamod/extremal_families.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "deltamod/errors.hpp"
#include "deltamod/exact_linalg.hpp"
#include "deltamod/modularity.hpp"

using namespace deltamod;

namespace {

// Brute-force partition counter: non-increasing sequences by recursion on the
// largest part, written independently of the generator under test.
long long count_by_hand(int remaining, int largest) {
  if (remaining == 0) return 1;
  long long total = 0;
  for (int p = 1; p <= std::min(remaining, largest); ++p) total += count_by_hand(remaining - p, p);
  return total;
}

std::multiset<IntVector> columns_of(const IntMatrix& m) {
  std::multiset<IntVector> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.insert(m.column(c));
  return out;
}

IntVector unit(int r, int i) {
  IntVector v(static_cast<std::size_t>(r), 0);
  v[static_cast<std::size_t>(i - 1)] = 1;
  return v;
}

IntVector combo(int r, std::initializer_list<std::pair<int, int>> entries) {
  IntVector v(static_cast<std::size_t>(r), 0);
  for (auto [i, val] : entries) v[static_cast<std::size_t>(i - 1)] += val;
  return v;
}

std::multiset<IntVector> frame(int r) {
  std::multiset<IntVector> out;
  for (int i = 1; i <= r; ++i) out.insert(unit(r, i));
  for (int i = 1; i <= r; ++i) {
    for (int j = i + 1; j <= r; ++j) out.insert(combo(r, {{i, 1}, {j, -1}}));
  }
  return out;
}

}  // namespace

TEST(Partitions, Examples) {
  auto p2 = partitions(2);
  ASSERT_EQ(p2.size(), 2u);
  EXPECT_EQ(p2[0], Partition({2}));
  EXPECT_EQ(p2[1], Partition({1, 1}));
  ASSERT_EQ(partitions(1).size(), 1u);
  EXPECT_EQ(partitions(4).size(), 5u);
  EXPECT_THROW(partitions(0), DomainError);
}

TEST(Partitions, ReverseLexicographicAndValid) {
  for (int n = 1; n <= 12; ++n) {
    auto ps = partitions(n);
    EXPECT_EQ(static_cast<long long>(ps.size()), count_by_hand(n, n));
    EXPECT_EQ(static_cast<long long>(ps.size()), partition_count(n));
    for (std::size_t i = 0; i < ps.size(); ++i) {
      EXPECT_EQ(ps[i].n(), n);
      if (i > 0) EXPECT_TRUE(ps[i - 1].parts() > ps[i].parts());
    }
    EXPECT_EQ(ps.front(), Partition({n}));
    EXPECT_EQ(ps.back(), Partition(std::vector<int>(static_cast<std::size_t>(n), 1)));
  }
}

TEST(Partitions, Parsing) {
  EXPECT_EQ(Partition::parse("2"), Partition({2}));
  EXPECT_EQ(Partition::parse("2,1,1"), Partition({2, 1, 1}));
  EXPECT_EQ(Partition::parse("1,1").to_string(), "1,1");
  EXPECT_THROW(Partition::parse("1,2"), ParseError);
  EXPECT_THROW(Partition::parse("0"), ParseError);
  EXPECT_THROW(Partition::parse("a"), ParseError);
  EXPECT_THROW(Partition::parse(""), ParseError);
  EXPECT_THROW(Partition::parse("2,"), ParseError);
}

TEST(BuildA, FigureLayoutSingleBlock) {
  // A(3, 2, r): frame, then columns with top entries (1 or 2, 1) over -I_{r-2}, plus e1+e2 and 2e1+e2.
  for (int r = 2; r <= 6; ++r) {
    auto expected = frame(r);
    for (int k = 1; k <= 2; ++k) {
      expected.insert(combo(r, {{1, k}, {2, 1}}));
      for (int j = 3; j <= r; ++j) expected.insert(combo(r, {{1, k}, {2, 1}, {j, -1}}));
    }
    auto a = build_A(3, Partition({2}), r);
    EXPECT_EQ(columns_of(a.matrix), expected) << "r=" << r;
    EXPECT_EQ(a.designated_element, 0u);
    EXPECT_EQ(a.matrix.column(0), unit(r, 1));
  }
}

TEST(BuildA, FigureLayoutTwoBlocks) {
  for (int r = 3; r <= 6; ++r) {
    auto expected = frame(r);
    // Four trailing columns of the figure: third-row entries 0, 1, -1, 1.
    expected.insert(combo(r, {{1, 1}, {2, 1}}));
    expected.insert(combo(r, {{1, 1}, {3, 1}}));
    expected.insert(combo(r, {{1, 1}, {2, 1}, {3, -1}}));
    expected.insert(combo(r, {{1, 1}, {2, -1}, {3, 1}}));
    for (int j = 4; j <= r; ++j) {
      expected.insert(combo(r, {{1, 1}, {2, 1}, {j, -1}}));
      expected.insert(combo(r, {{1, 1}, {3, 1}, {j, -1}}));
    }
    EXPECT_EQ(columns_of(build_A(3, Partition({1, 1}), r).matrix), expected) << "r=" << r;
  }
}

TEST(BuildA, ColumnOrderAndLabels) {
  auto a = build_A(3, Partition({2}), 4).matrix;
  ASSERT_EQ(a.cols(), 16u);
  std::vector<std::string> labels(a.labels());
  std::vector<std::string> expected;
  for (int i = 0; i < 4; ++i) expected.push_back("A-1");
  for (int i = 0; i < 6; ++i) expected.push_back("A-2");
  for (int i = 0; i < 2; ++i) expected.push_back("A-3");
  for (int i = 0; i < 4; ++i) expected.push_back("A-4");
  EXPECT_EQ(labels, expected);
  // A-4 order: k outer, j inner.
  EXPECT_EQ(a.column(12), make_vector({1, 1, -1, 0}));
  EXPECT_EQ(a.column(13), make_vector({1, 1, 0, -1}));
  EXPECT_EQ(a.column(14), make_vector({2, 1, -1, 0}));
  EXPECT_EQ(a.column(4), make_vector({1, -1, 0, 0}));
  EXPECT_EQ(a.column(6), make_vector({1, 0, 0, -1}));
  EXPECT_EQ(a.column(7), make_vector({0, 1, -1, 0}));
}

TEST(BuildA, Errors) {
  EXPECT_THROW(build_A(3, Partition({1, 1}), 2), DomainError);
  EXPECT_THROW(build_A(3, Partition({1}), 4), DomainError);
  EXPECT_THROW(build_A(1, Partition({1}), 4), DomainError);
  EXPECT_THROW(build_A_lee(3, 1), DomainError);
}

TEST(BuildALee, FigureLayout) {
  for (int r = 2; r <= 6; ++r) {
    auto expected = frame(r);
    for (int k = 2; k <= 3; ++k) {
      for (int i = 2; i <= r; ++i) expected.insert(combo(r, {{1, k}, {i, -1}}));
    }
    EXPECT_EQ(columns_of(build_A_lee(3, r).matrix), expected);
  }
  EXPECT_EQ(columns_of(build_A_lee(1, 4).matrix), frame(4));
  EXPECT_EQ(build_A_lee(2, 4).matrix.cols(), 13u);
}

TEST(ExpectedCount, Examples) {
  EXPECT_EQ(expected_count(3, 5), 23);
  EXPECT_EQ(expected_count(1, 6), 21);
  EXPECT_EQ(expected_count(2, 3), 8);
  EXPECT_EQ(expected_count(3, 4), 16);
}

TEST(Families, CountsParallelismAndModularitySmall) {
  for (int delta = 2; delta <= 4; ++delta) {
    for (const auto& lambda : partitions(delta - 1)) {
      for (int r = static_cast<int>(lambda.m()) + 1; r <= 5; ++r) {
        auto a = build_A(delta, lambda, r);
        auto rep = modularity_level(a.matrix);
        EXPECT_LE(rep.delta, delta);
        EXPECT_TRUE(rep.pairwise_non_parallel);
        EXPECT_EQ(static_cast<long long>(a.matrix.cols()), expected_count(delta, r));
        EXPECT_EQ(rank(a.matrix), static_cast<std::size_t>(r));
      }
    }
  }
  for (int delta = 1; delta <= 4; ++delta) {
    for (int r = 2; r <= 5; ++r) {
      auto a = build_A_lee(delta, r);
      auto rep = modularity_level(a.matrix);
      EXPECT_LE(rep.delta, delta);
      EXPECT_TRUE(rep.pairwise_non_parallel);
      EXPECT_EQ(static_cast<long long>(a.matrix.cols()), expected_count(delta, r));
    }
  }
}

TEST(Families, DistinctButEquinumerous) {
  for (int delta = 2; delta <= 5; ++delta) {
    for (int r = 2; r <= 5; ++r) {
      auto a = build_A(delta, Partition({delta - 1}), r).matrix;
      auto b = build_A_lee(delta, r).matrix;
      EXPECT_EQ(a.cols(), b.cols());
      EXPECT_NE(columns_of(a), columns_of(b));
    }
  }
}

TEST(Sporadic, Shape) {
  IntMatrix s = sporadic_rank3();
  EXPECT_EQ(s.rows(), 3u);
  EXPECT_EQ(s.cols(), 11u);
  EXPECT_GT(static_cast<long long>(s.cols()), expected_count(3, 3));
  EXPECT_TRUE(parallel_pairs(s).empty());
  EXPECT_EQ(rank(s), 3u);
}
