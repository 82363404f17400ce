#include "deltamod/exact_linalg.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>

#include "deltamod/errors.hpp"
#include "deltamod/parallel.hpp"
#include "minor_walk.hpp"

namespace deltamod {

namespace {

void guard_entries(const IntMatrix& m) {
  const ArithmeticPolicy policy = arithmetic_policy();
  if (policy.arbitrary_precision) return;
  if (m.max_abs_entry() > policy.entry_bound) {
    throw MagnitudeError("matrix entry exceeds the configured magnitude bound " + to_string(policy.entry_bound));
  }
}

// Row-echelon elimination without division remainders; returns the number of
// pivots. `sign` flips on each row swap; the last pivot is the determinant
// for square input.
std::size_t bareiss(std::vector<std::vector<Integer>>& a, std::size_t cols, int& sign) {
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t pivot_row = 0;
  sign = 1;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t p = pivot_row;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != pivot_row) {
      std::swap(a[p], a[pivot_row]);
      sign = -sign;
    }
    const Integer& piv = a[pivot_row][c];
    for (std::size_t i = pivot_row + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (piv * a[i][j] - a[i][c] * a[pivot_row][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = piv;
    ++pivot_row;
  }
  return pivot_row;
}

std::vector<std::vector<Integer>> to_rows(const IntMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) a[r] = m.row(r);
  return a;
}

// ---------------------------------------------------------------------------
// Subdeterminant enumeration.

enum class Scan { kFullRank, kSquare };

template <typename Scalar>
struct Hit {
  bool found = false;
  Scalar value{};  // signed coordinate
  IndexSet cols;
  std::size_t size = 0;
  std::size_t row_index = 0;
};

template <typename Scalar>
std::vector<std::vector<Scalar>> columns_as(const IntMatrix& m) {
  std::vector<std::vector<Scalar>> cols(m.cols(), std::vector<Scalar>(m.rows()));
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if constexpr (std::is_same_v<Scalar, Integer>) {
        cols[c][r] = m(r, c);
      } else {
        cols[c][r] = static_cast<std::int64_t>(m(r, c));
      }
    }
  }
  return cols;
}

bool fits_int64(const IntMatrix& m) {
  return m.max_abs_entry() <= Integer(std::numeric_limits<std::int64_t>::max());
}

template <typename Scalar>
Scalar clamp_bound(const Integer& bound) {
  if constexpr (std::is_same_v<Scalar, Integer>) {
    return bound;
  } else {
    if (bound >= Integer(std::numeric_limits<std::int64_t>::max())) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(bound);
  }
}

// Walks all column subsets (full-rank leaves of size k, or every size for
// kSquare) and either maximizes |coord| or stops at the first |coord| > bound.
template <typename Scalar>
Hit<Scalar> walk(const IntMatrix& m, Scan scan, std::size_t k, const std::optional<Integer>& bound) {
  const auto columns = columns_as<Scalar>(m);
  const std::size_t depth = scan == Scan::kFullRank ? k : std::min(m.rows(), m.cols());
  const detail::RowSubsets subsets(m.rows(), depth);
  const std::size_t branches = m.cols();
  std::vector<Hit<Scalar>> per_branch(branches);
  std::atomic<std::size_t> first_found{branches};
  const bool searching = bound.has_value();
  const Scalar limit = searching ? clamp_bound<Scalar>(*bound) : Scalar(0);

  auto branch = [&](std::size_t b) {
    detail::MinorWalker<Scalar> walker(columns, subsets, depth,
                                       scan == Scan::kFullRank ? std::optional<std::size_t>(k) : std::nullopt);
    Hit<Scalar>& hit = per_branch[b];
    Scalar best_abs = Scalar(0);
    auto visit = [&](std::span<const std::size_t> cols, std::span<const Scalar> coords) {
      const std::size_t size = cols.size();
      if (scan == Scan::kFullRank && size < k) return detail::WalkAction::kDescend;
      for (std::size_t idx = 0; idx < coords.size(); ++idx) {
        if (coords[idx] == 0) continue;
        const Scalar a = detail::magnitude(coords[idx]);
        if (searching ? a > limit : a > best_abs) {
          best_abs = a;
          hit.found = true;
          hit.value = coords[idx];
          hit.cols.assign(cols.begin(), cols.end());
          hit.size = size;
          hit.row_index = idx;
          if (searching) return detail::WalkAction::kStop;
        }
      }
      return scan == Scan::kFullRank ? detail::WalkAction::kSkip : detail::WalkAction::kDescend;
    };
    walker.run(visit, b, b + 1);
    if (searching && hit.found) {
      std::size_t cur = first_found.load();
      while (b < cur && !first_found.compare_exchange_weak(cur, b)) {
      }
    }
  };
  auto keep_going = [&](std::size_t b) { return b < first_found.load(); };
  detail::for_each_branch(branches, worker_threads(), branch, keep_going);

  Hit<Scalar> result;
  for (std::size_t b = 0; b < branches; ++b) {
    const auto& h = per_branch[b];
    if (!h.found) continue;
    if (searching) {
      result = h;
      break;
    }
    if (!result.found || detail::magnitude(h.value) > detail::magnitude(result.value)) result = h;
  }
  return result;
}

struct Found {
  bool found = false;
  SubmatrixWitness witness;
};

template <typename Scalar>
Found to_found(const IntMatrix& m, const Hit<Scalar>& hit) {
  Found f;
  if (!hit.found) return f;
  f.found = true;
  const detail::RowSubsets subsets(m.rows(), hit.size);
  f.witness.rows = subsets.members(hit.size, hit.row_index);
  f.witness.cols = hit.cols;
  f.witness.det = Integer(hit.value);
  return f;
}

// Plain combination enumeration for matrices beyond the walker's row limit.
bool next_combination(IndexSet& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Found brute_force(const IntMatrix& m, Scan scan, std::size_t k, const std::optional<Integer>& bound) {
  Found best;
  Integer best_abs = 0;
  const std::size_t lo = scan == Scan::kFullRank ? k : 1;
  const std::size_t hi = scan == Scan::kFullRank ? k : std::min(m.rows(), m.cols());
  for (std::size_t size = lo; size <= hi; ++size) {
    IndexSet cols(size);
    std::iota(cols.begin(), cols.end(), 0);
    do {
      IndexSet rows(size);
      std::iota(rows.begin(), rows.end(), 0);
      do {
        Integer d = det(m.submatrix(rows, cols));
        Integer a = abs(d);
        if (bound ? a > *bound : a > best_abs) {
          best_abs = a;
          best.found = true;
          best.witness = SubmatrixWitness{rows, cols, d};
          if (bound) return best;
        }
      } while (next_combination(rows, m.rows()));
    } while (next_combination(cols, m.cols()));
  }
  return best;
}

Found enumerate(const IntMatrix& m, Scan scan, std::size_t k, const std::optional<Integer>& bound) {
  guard_entries(m);
  if (m.rows() > detail::RowSubsets::kMaxRows) return brute_force(m, scan, k, bound);
  if (fits_int64(m)) {
    try {
      return to_found(m, walk<std::int64_t>(m, scan, k, bound));
    } catch (const detail::Int64Overflow&) {
      if (!arithmetic_policy().arbitrary_precision) {
        throw MagnitudeError("subdeterminant exceeds 64-bit range with arbitrary precision disabled");
      }
    }
  }
  return to_found(m, walk<Integer>(m, scan, k, bound));
}

Integer xgcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Integer det(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("det: matrix is not square");
  guard_entries(m);
  auto a = to_rows(m);
  int sign = 1;
  const std::size_t n = m.rows();
  if (bareiss(a, n, sign) < n) return 0;
  return sign * a[n - 1][n - 1];
}

std::size_t rank(const IntMatrix& m) {
  guard_entries(m);
  auto a = to_rows(m);
  int sign = 1;
  return bareiss(a, m.cols(), sign);
}

SubdetMaximum max_abs_full_rank_subdet(const IntMatrix& m) {
  const std::size_t k = rank(m);
  if (k == 0) throw DegenerateRankError("max_abs_full_rank_subdet: matrix has rank 0");
  Found f = enumerate(m, Scan::kFullRank, k, std::nullopt);
  return SubdetMaximum{abs(f.witness.det), f.witness};
}

SubdetMaximum max_abs_square_subdet(const IntMatrix& m) {
  Found f = enumerate(m, Scan::kSquare, 0, std::nullopt);
  if (!f.found) return SubdetMaximum{0, {}};
  return SubdetMaximum{abs(f.witness.det), f.witness};
}

std::optional<SubmatrixWitness> find_full_rank_subdet_above(const IntMatrix& m, const Integer& bound) {
  const std::size_t k = rank(m);
  if (k == 0) throw DegenerateRankError("find_full_rank_subdet_above: matrix has rank 0");
  Found f = enumerate(m, Scan::kFullRank, k, bound);
  if (!f.found) return std::nullopt;
  return f.witness;
}

std::optional<SubmatrixWitness> find_square_subdet_above(const IntMatrix& m, const Integer& bound) {
  Found f = enumerate(m, Scan::kSquare, 0, bound);
  if (!f.found) return std::nullopt;
  return f.witness;
}

bool is_parallel(std::span<const Integer> u, std::span<const Integer> v) {
  if (u.size() != v.size()) throw DimensionError("is_parallel: vectors have different lengths");
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      if (u[i] * v[j] != u[j] * v[i]) return false;
    }
  }
  return true;
}

IntVector primitive_part(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  if (g == 0) throw DomainError("primitive_part: zero vector");
  g = abs(g);
  IntVector out(v.begin(), v.end());
  for (auto& x : out) x /= g;
  return out;
}

IntVector sign_canonical(std::span<const Integer> v) {
  IntVector out(v.begin(), v.end());
  for (const auto& x : out) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : out) y = -y;
    }
    break;
  }
  return out;
}

void apply_row_operation(IntMatrix& m, const RowOperation& op) {
  if (op.i == op.j) {
    if (op.p != 1) {
      for (std::size_t c = 0; c < m.cols(); ++c) m(op.i, c) *= op.p;
    }
    return;
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Integer a = m(op.i, c);
    Integer b = m(op.j, c);
    m(op.i, c) = op.p * a + op.q * b;
    m(op.j, c) = op.s * a + op.t * b;
  }
}

HermiteResult hermite_triangularize(const IntMatrix& m, std::span<const std::size_t> basis_cols) {
  const std::size_t n = m.rows();
  if (basis_cols.size() != n) throw DimensionError("hermite_triangularize: basis size must equal the row count");
  for (std::size_t c : basis_cols) {
    if (c >= m.cols()) throw DimensionError("hermite_triangularize: basis column out of range");
  }
  guard_entries(m);
  HermiteResult res{m, IntMatrix::identity(n), {}};
  auto apply = [&](const RowOperation& op) {
    apply_row_operation(res.transformed, op);
    apply_row_operation(res.unimodular, op);
    res.operations.push_back(op);
  };

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t col = basis_cols[k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Integer y = res.transformed(i, col);
      if (y == 0) continue;
      const Integer x = res.transformed(k, col);
      if (x == 0) {
        apply(RowOperation{k, i, 0, 1, 1, 0});
        continue;
      }
      Integer u, v;
      const Integer g = xgcd(x, y, u, v);
      apply(RowOperation{k, i, u, v, -(y / g), x / g});
    }
    const Integer piv = res.transformed(k, col);
    if (piv == 0) throw DegenerateRankError("hermite_triangularize: basis block is singular");
    if (piv < 0) apply(RowOperation{k, k, -1, 0, 0, 1});
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t col = basis_cols[k];
    const Integer piv = res.transformed(k, col);
    for (std::size_t i = 0; i < k; ++i) {
      const Integer q = floor_div(res.transformed(i, col), piv);
      if (q != 0) apply(RowOperation{i, k, 1, -q, 0, 1});
    }
  }
  return res;
}

IntMatrix inverse_from_operations(const std::vector<RowOperation>& ops, std::size_t n) {
  IntMatrix inv = IntMatrix::identity(n);
  // U = E_k ... E_1, so U^{-1} = E_1^{-1} ... E_k^{-1}.
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const RowOperation& op = *it;
    RowOperation undo = op;
    if (op.i != op.j) {
      const Integer d = op.p * op.t - op.q * op.s;  // ±1
      undo.p = op.t * d;
      undo.q = -op.q * d;
      undo.s = -op.s * d;
      undo.t = op.p * d;
    }
    apply_row_operation(inv, undo);
  }
  return inv;
}

}  // namespace deltamod
