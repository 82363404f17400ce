#include "deltamod/search.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "deltamod/errors.hpp"
#include "deltamod/exact_linalg.hpp"
#include "deltamod/extremal_families.hpp"
#include "oracles.hpp"

using namespace deltamod;

namespace {

IntVector sign_fixed(IntVector v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    break;
  }
  return v;
}

bool pairwise_non_parallel(const std::vector<IntVector>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = i + 1; j < cols.size(); ++j) {
      IntMatrix m = IntMatrix::from_columns({cols[i], cols[j]}, cols[i].size());
      if (oracle::minor_rank(m) < 2) return false;
    }
  }
  return true;
}

// Largest feasible subset of `universe`, by exhaustive subset enumeration.
long long brute_force_max(const std::vector<IntVector>& universe, std::size_t r, int delta) {
  long long best = 0;
  const std::size_t n = universe.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) cols.push_back(universe[i]);
    }
    if (static_cast<long long>(cols.size()) <= best || cols.size() < r) continue;
    IntMatrix m = IntMatrix::from_columns(cols, r);
    if (oracle::minor_rank(m) != r || !pairwise_non_parallel(cols)) continue;
    if (oracle::max_abs_minor(m, r) <= delta) best = static_cast<long long>(cols.size());
  }
  return best;
}

SearchCertificate run(int delta, int r, SearchMode mode) {
  SearchConfig c;
  c.delta = delta;
  c.rank = r;
  c.mode = mode;
  return max_columns_search(c);
}

}  // namespace

TEST(ColumnUniverse, IdentityExamples) {
  std::vector<IntVector> want{make_vector({0, 1}), make_vector({1, -1}), make_vector({1, 0}), make_vector({1, 1})};
  EXPECT_EQ(column_universe(1, 2, SearchMode::kIdentityAnchored), want);
  EXPECT_EQ(column_universe(2, 2, SearchMode::kIdentityAnchored).size(), 8u);
}

TEST(ColumnUniverse, PrimitiveSignCanonicalAndSorted) {
  for (auto mode : {SearchMode::kIdentityAnchored, SearchMode::kHnfExhaustive}) {
    auto u = column_universe(3, 3, mode);
    std::set<IntVector> seen;
    for (const auto& v : u) {
      EXPECT_EQ(primitive_part(v), v);
      EXPECT_EQ(sign_fixed(v), v);
      EXPECT_TRUE(seen.insert(v).second);
    }
    for (std::size_t i = 1; i < u.size(); ++i) {
      auto mag = [](const IntVector& v) {
        Integer m = 0;
        for (const auto& x : v) m = std::max(m, abs(x));
        return m;
      };
      EXPECT_TRUE(mag(u[i - 1]) < mag(u[i]) || (mag(u[i - 1]) == mag(u[i]) && u[i - 1] < u[i]));
    }
  }
}

TEST(ColumnUniverse, ContainsLeeColumns) {
  for (int delta = 1; delta <= 4; ++delta) {
    for (int r = 2; r <= 4; ++r) {
      auto u = column_universe(delta, r, SearchMode::kIdentityAnchored);
      std::set<IntVector> s(u.begin(), u.end());
      IntMatrix lee = build_A_lee(delta, r).matrix;
      for (std::size_t c = 0; c < lee.cols(); ++c) EXPECT_TRUE(s.count(sign_fixed(lee.column(c))));
    }
  }
}

TEST(ColumnUniverse, UnimodularHnfIsIdentity) {
  for (int r = 1; r <= 4; ++r) {
    EXPECT_EQ(column_universe(1, r, SearchMode::kHnfExhaustive), column_universe(1, r, SearchMode::kIdentityAnchored));
  }
}

TEST(ColumnUniverse, Errors) {
  EXPECT_THROW(column_universe(0, 2, SearchMode::kIdentityAnchored), DomainError);
  EXPECT_THROW(column_universe(2, 0, SearchMode::kIdentityAnchored), DomainError);
  EXPECT_THROW(column_universe(2, 3, SearchMode::kGreedySeeded), DomainError);
  EXPECT_THROW(parse_search_mode("dfs"), ParseError);
  EXPECT_EQ(parse_search_mode("hnf-exhaustive"), SearchMode::kHnfExhaustive);
  EXPECT_EQ(to_string(SearchMode::kGreedySeeded), "greedy-seeded");
}

TEST(MaxColumnsSearch, KnownValues) {
  auto a = run(1, 2, SearchMode::kHnfExhaustive);
  EXPECT_EQ(a.best_count, 3);
  EXPECT_TRUE(a.optimal);
  EXPECT_EQ(a.scope, "global");
  auto b = run(1, 3, SearchMode::kHnfExhaustive);
  EXPECT_EQ(b.best_count, 6);
  EXPECT_TRUE(b.optimal);
  auto c = run(2, 3, SearchMode::kHnfExhaustive);
  EXPECT_EQ(c.best_count, 9);
  EXPECT_TRUE(c.optimal);
  EXPECT_EQ(c.ceiling, 24);
  EXPECT_TRUE(verify_is_feasible(c.best_matrix, 2));
  EXPECT_EQ(static_cast<long long>(c.best_matrix.cols()), c.best_count);
  auto d = run(2, 3, SearchMode::kIdentityAnchored);
  EXPECT_EQ(d.best_count, 9);
  EXPECT_EQ(d.scope, "identity-anchored");
}

TEST(MaxColumnsSearch, MatchesSubsetBruteForce) {
  for (auto [delta, r] : {std::pair{1, 2}, {2, 2}, {3, 2}, {1, 3}}) {
    auto u = column_universe(delta, r, SearchMode::kIdentityAnchored);
    EXPECT_EQ(run(delta, r, SearchMode::kIdentityAnchored).best_count,
              brute_force_max(u, static_cast<std::size_t>(r), delta));
  }
  for (auto [delta, r] : {std::pair{2, 2}, {3, 2}, {4, 2}}) {
    auto u = column_universe(delta, r, SearchMode::kHnfExhaustive);
    EXPECT_EQ(run(delta, r, SearchMode::kHnfExhaustive).best_count,
              brute_force_max(u, static_cast<std::size_t>(r), delta));
  }
}

TEST(MaxColumnsSearch, AtLeastKnownLowerBound) {
  for (int delta = 1; delta <= 3; ++delta) {
    for (int r = 2; r <= 3; ++r) {
      auto cert = run(delta, r, SearchMode::kIdentityAnchored);
      EXPECT_GE(cert.best_count, expected_count(delta, r));
      EXPECT_LE(cert.best_count, cert.ceiling);
    }
  }
}

TEST(MaxColumnsSearch, UnimodularModesAgree) {
  for (int r = 1; r <= 3; ++r) {
    auto h = run(1, r, SearchMode::kHnfExhaustive);
    auto i = run(1, r, SearchMode::kIdentityAnchored);
    EXPECT_EQ(h.best_count, i.best_count);
    EXPECT_EQ(h.best_matrix, i.best_matrix);
    EXPECT_EQ(h.best_count, r * (r + 1) / 2);
  }
}

TEST(MaxColumnsSearch, Deterministic) {
  auto a = run(3, 3, SearchMode::kIdentityAnchored);
  auto b = run(3, 3, SearchMode::kIdentityAnchored);
  EXPECT_EQ(a.best_matrix, b.best_matrix);
  EXPECT_EQ(a.nodes, b.nodes);
}

TEST(MaxColumnsSearch, SeededBySporadicMatrix) {
  SearchConfig c;
  c.delta = 3;
  c.rank = 3;
  c.mode = SearchMode::kGreedySeeded;
  c.seed = sporadic_rank3();
  auto cert = max_columns_search(c);
  EXPECT_GE(cert.best_count, 11);
  EXPECT_FALSE(cert.optimal);
  EXPECT_EQ(cert.scope, "seed-extension");
  EXPECT_TRUE(verify_is_feasible(cert.best_matrix, 3));

  c.seed = sporadic_rank3().append_column(make_vector({1, 0, 0}));
  EXPECT_THROW(max_columns_search(c), DomainError);
  c.seed.reset();
  EXPECT_THROW(max_columns_search(c), DomainError);
}

TEST(MaxColumnsSearch, NodeLimitDowngradesOptimality) {
  SearchConfig c;
  c.delta = 3;
  c.rank = 3;
  c.mode = SearchMode::kIdentityAnchored;
  c.node_limit = 50;
  auto cert = max_columns_search(c);
  EXPECT_FALSE(cert.optimal);
  EXPECT_FALSE(cert.exhausted);
  EXPECT_TRUE(verify_is_feasible(cert.best_matrix, 3));
  c.node_limit = 0;
  EXPECT_THROW(max_columns_search(c), DomainError);
}

TEST(VerifyIsFeasible, Examples) {
  EXPECT_TRUE(verify_is_feasible(build_A(3, Partition({2}), 5).matrix, 3));
  EXPECT_FALSE(verify_is_feasible(sporadic_rank3().append_column(sporadic_rank3().column(4)), 3));
  EXPECT_FALSE(verify_is_feasible(IntMatrix::identity(3).append_column(make_vector({2, 2, 2})), 1));
  EXPECT_FALSE(verify_is_feasible(IntMatrix{{1, 0}, {0, 0}}, 1));
}
