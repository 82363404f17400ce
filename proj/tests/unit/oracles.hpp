#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "deltamod/int_matrix.hpp"

namespace oracle {

using deltamod::Integer;
using deltamod::IntMatrix;
using deltamod::IndexSet;

inline Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IndexSet rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != c) cols.push_back(j);
    }
    Integer minor = cofactor_det(m.submatrix(rows, cols));
    total += (c % 2 == 0 ? 1 : -1) * m(0, c) * minor;
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const IndexSet&)>& fn) {
  IndexSet cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      fn(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Rank by checking, from the largest size down, whether some minor is nonzero.
inline std::size_t minor_rank(const IntMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    bool nonzero = false;
    for_each_subset(m.cols(), k, [&](const IndexSet& cols) {
      if (nonzero) return;
      for_each_subset(m.rows(), k, [&](const IndexSet& rows) {
        if (!nonzero && cofactor_det(m.submatrix(rows, cols)) != 0) nonzero = true;
      });
    });
    if (nonzero) return k;
  }
  return 0;
}

inline Integer max_abs_minor(const IntMatrix& m, std::size_t k) {
  Integer best = 0;
  for_each_subset(m.cols(), k, [&](const IndexSet& cols) {
    for_each_subset(m.rows(), k, [&](const IndexSet& rows) {
      Integer d = cofactor_det(m.submatrix(rows, cols));
      if (d < 0) d = -d;
      if (d > best) best = d;
    });
  });
  return best;
}

inline Integer max_abs_any_minor(const IntMatrix& m) {
  Integer best = 0;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) best = std::max(best, max_abs_minor(m, k));
  return best;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  }
  return m;
}

// Columns e_i - e_j, i < j, i outer.
inline IntMatrix clique(std::size_t n) {
  std::vector<deltamod::IntVector> cols;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      deltamod::IntVector v(n, 0);
      v[i] = 1;
      v[j] = -1;
      cols.push_back(v);
    }
  }
  return IntMatrix::from_columns(cols, n);
}

}  // namespace oracle
