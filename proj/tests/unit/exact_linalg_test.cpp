#include "deltamod/exact_linalg.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "deltamod/errors.hpp"
#include "oracles.hpp"

using namespace deltamod;

namespace {

IntMatrix matrix_b1(long long w, long long x, long long y) {
  return IntMatrix{{0, 0, -2, 1, x}, {1, 0, w, -1, y}, {0, 1, 1, 0, 0}, {0, -1, 0, 1, 0}, {-1, 0, 0, 0, 1}};
}

IntMatrix matrix_b3(long long w, long long x, long long y) {
  return IntMatrix{{1 - y, 0, 0, -1, -1, y}, {0, 1 - x, 0, -1, x, -1}, {0, 0, 1 - w, w, -1, -1},
                   {0, 0, -1, 1, 0, 0},      {0, -1, 0, 0, 1, 0},      {-1, 0, 0, 0, 0, 1}};
}

IntMatrix sporadic() {
  return IntMatrix{{1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1},
                   {0, 1, 0, -1, 0, 1, 1, 2, 1, 2, 1},
                   {0, 0, 1, 0, -1, -1, -2, -3, -2, -3, -3}};
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    auto i = static_cast<std::size_t>(pick(rng)), j = static_cast<std::size_t>(pick(rng));
    if (i == j) continue;
    apply_row_operation(u, RowOperation{i, j, 1, coef(rng), 0, 1});
  }
  return u;
}

}  // namespace

TEST(Det, Identity) { EXPECT_EQ(det(IntMatrix::identity(3)), 1); }

TEST(Det, WitnessMatrices) {
  EXPECT_EQ(abs(det(matrix_b3(1, 1, 1))), 4);
  EXPECT_EQ(abs(det(matrix_b1(0, 1, 0))), 4);
  for (int w = -2; w <= 2; ++w) {
    for (int x = -2; x <= 2; ++x) {
      for (int y = -2; y <= 2; ++y) {
        Integer expected = abs(Integer(w * x + x + 3 * (y + 1)));
        EXPECT_EQ(abs(det(matrix_b1(w, x, y))), expected);
      }
    }
  }
}

TEST(Det, NonSquareThrows) { EXPECT_THROW(det(IntMatrix(2, 3)), DimensionError); }

TEST(Det, MatchesCofactorOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 1200; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    IntMatrix m = oracle::random_matrix(rng, n, n, -9, 9);
    ASSERT_EQ(det(m), oracle::cofactor_det(m)) << "trial " << trial;
  }
}

TEST(Det, LargeEntriesStayExact) {
  Integer big = Integer(1) << 70;
  IntMatrix m(2, 2);
  m(0, 0) = big;
  m(0, 1) = 3;
  m(1, 0) = 5;
  m(1, 1) = big;
  EXPECT_EQ(det(m), big * big - 15);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(IntMatrix::identity(3)), 3u);
  EXPECT_EQ(rank(oracle::clique(4)), 3u);
  EXPECT_EQ(rank(IntMatrix(2, 2)), 0u);
}

TEST(Rank, MatchesMinorOracle) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    IntMatrix m = oracle::random_matrix(rng, r, c, -1, 1);
    ASSERT_EQ(rank(m), oracle::minor_rank(m));
  }
}

TEST(FullRankSubdet, Examples) {
  IntMatrix id_clique = IntMatrix::identity(3).hconcat(oracle::clique(3));
  EXPECT_EQ(max_abs_full_rank_subdet(id_clique).value, 1);
  auto sp = max_abs_full_rank_subdet(sporadic());
  EXPECT_EQ(sp.value, 3);
  EXPECT_EQ(abs(det(sporadic().submatrix(sp.witness.rows, sp.witness.cols))), 3);

  IntMatrix d4a = oracle::clique(4).append_column(make_vector({-3, 2, 1, 0}));
  EXPECT_EQ(max_abs_full_rank_subdet(d4a).value, 3);
  EXPECT_EQ(oracle::max_abs_minor(d4a, 3), 3);
}

TEST(FullRankSubdet, ZeroMatrixThrows) { EXPECT_THROW(max_abs_full_rank_subdet(IntMatrix(2, 3)), DegenerateRankError); }

TEST(FullRankSubdet, WitnessIsFirstMaximizer) {
  IntMatrix m{{1, 0, 2, 0}, {0, 1, 0, 2}};
  auto res = max_abs_full_rank_subdet(m);
  EXPECT_EQ(res.value, 4);
  EXPECT_EQ(res.witness.cols, (IndexSet{2, 3}));
  IntMatrix n{{2, 0, 1}, {0, 1, 1}, {1, 1, 0}};
  EXPECT_EQ(max_abs_full_rank_subdet(n).witness.cols, (IndexSet{0, 1, 2}));
  IntMatrix p{{1, 1, 2}, {0, 2, 0}};
  auto rp = max_abs_full_rank_subdet(p);
  EXPECT_EQ(rp.value, 4);
  EXPECT_EQ(rp.witness.cols, (IndexSet{1, 2}));
}

TEST(FullRankSubdet, RankDeficientUsesRankSizedMinors) {
  IntMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  ASSERT_EQ(rank(m), 2u);
  EXPECT_EQ(max_abs_full_rank_subdet(m).value, oracle::max_abs_minor(m, 2));
}

TEST(FullRankSubdet, MatchesBruteForce) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 4, c = r + rng() % 4;
    IntMatrix m = oracle::random_matrix(rng, r, c, -3, 3);
    std::size_t k = oracle::minor_rank(m);
    if (k == 0) continue;
    auto res = max_abs_full_rank_subdet(m);
    ASSERT_EQ(res.value, oracle::max_abs_minor(m, k));
    ASSERT_EQ(det(m.submatrix(res.witness.rows, res.witness.cols)), res.witness.det);
  }
}

TEST(FullRankSubdet, Invariances) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m = oracle::random_matrix(rng, 3, 6, -3, 3);
    if (rank(m) == 0) continue;
    Integer base = max_abs_full_rank_subdet(m).value;

    std::vector<std::size_t> rows{0, 1, 2}, cols(6);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    EXPECT_EQ(max_abs_full_rank_subdet(m.submatrix(rows, cols)).value, base);

    IntMatrix neg = m;
    for (std::size_t r = 0; r < 3; ++r) neg(r, trial % 6) = -neg(r, trial % 6);
    EXPECT_EQ(max_abs_full_rank_subdet(neg).value, base);

    EXPECT_EQ(max_abs_full_rank_subdet(random_unimodular(rng, 3) * m).value, base);
  }
}

TEST(SquareSubdet, IdentityBlockCompletion) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 2 + rng() % 3;
    IntMatrix w = oracle::random_matrix(rng, r, 1 + rng() % 4, -2, 2);
    IntMatrix m = IntMatrix::identity(r).hconcat(w);
    Integer all_sizes = std::max(oracle::max_abs_any_minor(m), Integer(1));
    EXPECT_EQ(max_abs_full_rank_subdet(m).value, all_sizes);
    EXPECT_EQ(std::max(max_abs_square_subdet(w).value, Integer(1)), all_sizes);
  }
}

TEST(SquareSubdet, FindAbove) {
  EXPECT_FALSE(find_square_subdet_above(IntMatrix{{1, 1}, {1, -1}}, 2).has_value());
  auto hit = find_square_subdet_above(IntMatrix{{1, 1}, {1, -1}}, 1);
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(abs(hit->det), 2);
  auto entry = find_square_subdet_above(IntMatrix{{1, 0}, {0, 3}}, 2);
  ASSERT_TRUE(entry.has_value());
  // Depth-first order reaches {0,1} before {1}.
  EXPECT_EQ(entry->cols, (IndexSet{0, 1}));
  EXPECT_EQ(entry->det, 3);
  EXPECT_EQ(max_abs_square_subdet(IntMatrix(2, 2)).value, 0);
}

TEST(FullRankSubdet, FindAboveReturnsFirstViolator) {
  auto sp = sporadic();
  EXPECT_FALSE(find_full_rank_subdet_above(sp, 3).has_value());
  auto v = find_full_rank_subdet_above(sp, 2);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(abs(v->det), 3);
  EXPECT_EQ(det(sp.submatrix(v->rows, v->cols)), v->det);
}

TEST(FullRankSubdet, Int64OverflowFallsBack) {
  Integer big = Integer(1) << 40;
  IntMatrix m(2, 2);
  m(0, 0) = big;
  m(1, 1) = big;
  m(0, 1) = 1;
  EXPECT_EQ(max_abs_full_rank_subdet(m).value, big * big);
}

TEST(FullRankSubdet, MagnitudeGuard) {
  ArithmeticPolicy saved = arithmetic_policy();
  set_arithmetic_policy(ArithmeticPolicy{false, 100});
  EXPECT_THROW(max_abs_full_rank_subdet(IntMatrix{{101, 0}, {0, 1}}), MagnitudeError);
  EXPECT_EQ(max_abs_full_rank_subdet(IntMatrix{{100, 0}, {0, 1}}).value, 100);
  set_arithmetic_policy(saved);
}

TEST(Parallel, Examples) {
  EXPECT_TRUE(is_parallel(make_vector({1, 2}), make_vector({2, 4})));
  EXPECT_FALSE(is_parallel(make_vector({1, 0}), make_vector({0, 1})));
  EXPECT_TRUE(is_parallel(make_vector({0, 0}), make_vector({5, 7})));
  EXPECT_THROW(is_parallel(make_vector({1}), make_vector({1, 2})), DimensionError);
}

TEST(Parallel, EquivalenceOnNonzero) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-2, 2);
  std::vector<IntVector> vs;
  for (int i = 0; i < 40; ++i) {
    IntVector v{d(rng), d(rng)};
    if (v[0] == 0 && v[1] == 0) continue;
    vs.push_back(v);
  }
  for (const auto& u : vs) {
    EXPECT_TRUE(is_parallel(u, u));
    for (const auto& v : vs) {
      EXPECT_EQ(is_parallel(u, v), is_parallel(v, u));
      for (const auto& w : vs) {
        if (is_parallel(u, v) && is_parallel(v, w)) EXPECT_TRUE(is_parallel(u, w));
      }
    }
  }
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive_part(make_vector({2, 4, 6})), make_vector({1, 2, 3}));
  EXPECT_EQ(primitive_part(make_vector({-3, 0, 3})), make_vector({-1, 0, 1}));
  EXPECT_EQ(primitive_part(make_vector({5})), make_vector({1}));
  EXPECT_THROW(primitive_part(make_vector({0, 0})), DomainError);
  EXPECT_EQ(sign_canonical(make_vector({0, -1, 2})), make_vector({0, 1, -2}));
}

TEST(Hermite, Examples) {
  std::vector<std::size_t> all{0, 1, 2};
  auto id = hermite_triangularize(IntMatrix::identity(3), all);
  EXPECT_EQ(id.transformed, IntMatrix::identity(3));
  EXPECT_EQ(id.unimodular, IntMatrix::identity(3));

  std::vector<std::size_t> two{0, 1};
  auto swap = hermite_triangularize(IntMatrix{{0, 1}, {1, 0}}, two);
  EXPECT_EQ(swap.transformed, IntMatrix::identity(2));

  auto tri = hermite_triangularize(IntMatrix{{2, 1}, {0, 3}}, two);
  EXPECT_EQ(tri.transformed, (IntMatrix{{2, 1}, {0, 3}}));
  EXPECT_EQ(det(tri.transformed), 6);

  EXPECT_THROW(hermite_triangularize(IntMatrix{{1, 2}, {2, 4}}, two), DegenerateRankError);
}

TEST(Hermite, RandomBlocks) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 4;
    IntMatrix m = oracle::random_matrix(rng, r, r + 2, -5, 5);
    std::vector<std::size_t> basis(r);
    std::iota(basis.begin(), basis.end(), 1);
    std::vector<std::size_t> rows(r);
    std::iota(rows.begin(), rows.end(), 0);
    IntMatrix block = m.submatrix(rows, basis);
    Integer d = det(block);
    if (d == 0) continue;
    auto h = hermite_triangularize(m, basis);
    EXPECT_EQ(h.unimodular * m, h.transformed);
    EXPECT_EQ(abs(det(h.unimodular)), 1);
    EXPECT_EQ(h.unimodular * inverse_from_operations(h.operations, r), IntMatrix::identity(r));
    for (std::size_t i = 0; i < r; ++i) {
      const Integer& piv = h.transformed(i, basis[i]);
      EXPECT_GT(piv, 0);
      for (std::size_t k = i + 1; k < r; ++k) EXPECT_EQ(h.transformed(k, basis[i]), 0);
      for (std::size_t k = 0; k < i; ++k) {
        EXPECT_GE(h.transformed(k, basis[i]), 0);
        EXPECT_LT(h.transformed(k, basis[i]), piv);
      }
    }
    Integer prod = 1;
    for (std::size_t i = 0; i < r; ++i) prod *= h.transformed(i, basis[i]);
    EXPECT_EQ(prod, abs(d));
  }
}
