#include "deltamod/clique_extensions.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include "deltamod/errors.hpp"
#include "deltamod/exact_linalg.hpp"
#include "deltamod/extremal_families.hpp"
#include "deltamod/modularity.hpp"

namespace deltamod {

namespace {

using Int128 = __int128;

// Small-matrix determinant in 128-bit arithmetic; nullopt on overflow.
std::optional<Int128> small_det(std::vector<Int128> a, std::size_t n) {
  Int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * n + k] == 0) ++p;
    if (p == n) return Int128(0);
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[p * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int128 x, y, diff;
        if (__builtin_mul_overflow(a[k * n + k], a[i * n + j], &x)) return std::nullopt;
        if (__builtin_mul_overflow(a[i * n + k], a[k * n + j], &y)) return std::nullopt;
        if (__builtin_sub_overflow(x, y, &diff)) return std::nullopt;
        a[i * n + j] = diff / prev;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

std::size_t clique_index(std::size_t n, std::size_t i, std::size_t j) {
  // Columns e_i - e_j (i < j), i outer.
  std::size_t idx = 0;
  for (std::size_t a = 0; a < i; ++a) idx += n - 1 - a;
  return idx + (j - i - 1);
}

void require_zero_sum(const IntMatrix& y) {
  if (y.rows() < 2) throw DimensionError("clique extension needs at least two rows");
  for (std::size_t c = 0; c < y.cols(); ++c) {
    Integer s = 0;
    for (std::size_t r = 0; r < y.rows(); ++r) s += y(r, c);
    if (s != 0) throw DomainError("clique extension columns must sum to zero");
  }
}

class QuotientSearch {
 public:
  explicit QuotientSearch(const IntMatrix& y) : y_(y), n_(y.rows()), t_(y.cols()) {
    narrow_ = y.max_abs_entry() * Integer(n_) < Integer(std::numeric_limits<std::int64_t>::max());
    if (narrow_) {
      small_.resize(n_ * t_);
      for (std::size_t r = 0; r < n_; ++r) {
        for (std::size_t c = 0; c < t_; ++c) small_[r * t_ + c] = static_cast<std::int64_t>(y(r, c));
      }
    }
  }

  // Visits (J, block labels, |det|) in the documented order. The callback
  // returns false to stop.
  void run(const std::function<bool(const IndexSet&, const std::vector<std::size_t>&, const Integer&)>& fn) {
    const std::size_t jmax = std::min(t_, n_ - 1);
    for (std::size_t j = 1; j <= jmax; ++j) {
      IndexSet cols(j);
      for (std::size_t i = 0; i < j; ++i) cols[i] = i;
      while (true) {
        if (!partitions(cols, fn)) return;
        std::size_t i = j;
        while (i > 0 && cols[i - 1] == t_ - j + (i - 1)) --i;
        if (i == 0) break;
        ++cols[i - 1];
        for (std::size_t k = i; k < j; ++k) cols[k] = cols[k - 1] + 1;
      }
    }
  }

 private:
  bool partitions(const IndexSet& cols,
                  const std::function<bool(const IndexSet&, const std::vector<std::size_t>&, const Integer&)>& fn) {
    const std::size_t blocks = cols.size() + 1;
    std::vector<std::size_t> label(n_, 0);
    bool keep = true;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
      if (!keep) return;
      if (used + (n_ - i) < blocks) return;
      if (i == n_) {
        keep = fn(cols, label, block_det(cols, label));
        return;
      }
      for (std::size_t b = 0; b < used && keep; ++b) {
        label[i] = b;
        rec(i + 1, used);
      }
      if (used < blocks && keep) {
        label[i] = used;
        rec(i + 1, used + 1);
      }
    };
    label[0] = 0;
    rec(1, 1);
    return keep;
  }

  // |det| of the block-sum matrix with the last block row removed.
  Integer block_det(const IndexSet& cols, const std::vector<std::size_t>& label) {
    const std::size_t j = cols.size();
    if (narrow_) {
      std::vector<Int128> m(j * j, 0);
      for (std::size_t r = 0; r < n_; ++r) {
        if (label[r] == j) continue;
        for (std::size_t c = 0; c < j; ++c) m[label[r] * j + c] += small_[r * t_ + cols[c]];
      }
      if (auto d = small_det(m, j)) {
        Int128 v = *d < 0 ? -*d : *d;
        if (v <= Int128(std::numeric_limits<std::int64_t>::max())) return Integer(static_cast<std::int64_t>(v));
      }
    }
    IntMatrix m(j, j);
    for (std::size_t r = 0; r < n_; ++r) {
      if (label[r] == j) continue;
      for (std::size_t c = 0; c < j; ++c) m(label[r], c) += y_(r, cols[c]);
    }
    return abs(det(m));
  }

  const IntMatrix& y_;
  std::size_t n_, t_;
  bool narrow_ = false;
  std::vector<std::int64_t> small_;
};

SubmatrixWitness build_witness(const IntMatrix& y, const IndexSet& cols, const std::vector<std::size_t>& label,
                               const Integer& expected) {
  const std::size_t n = y.rows();
  const std::size_t offset = n * (n - 1) / 2;
  IndexSet wcols;
  std::vector<std::size_t> last(cols.size() + 1, n);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t b = label[r];
    if (last[b] != n) wcols.push_back(clique_index(n, last[b], r));
    last[b] = r;
  }
  for (std::size_t c : cols) wcols.push_back(offset + c);
  std::sort(wcols.begin(), wcols.end());
  IndexSet rows(n - 1);
  for (std::size_t r = 0; r + 1 < n; ++r) rows[r] = r;
  IntMatrix full = clique_extension_matrix(y);
  Integer d = det(full.submatrix(rows, wcols));
  if (abs(d) != expected) throw std::logic_error("clique quotient witness does not reproduce its determinant");
  return SubmatrixWitness{rows, wcols, d};
}

SubmatrixWitness spanning_path_witness(const IntMatrix& y) {
  const std::size_t n = y.rows();
  IndexSet cols, rows;
  for (std::size_t r = 0; r + 1 < n; ++r) {
    cols.push_back(clique_index(n, r, r + 1));
    rows.push_back(r);
  }
  return SubmatrixWitness{rows, cols, det(clique_extension_matrix(y).submatrix(rows, cols))};
}

void distinct_permutations(IntVector values, const std::function<void(const IntVector&)>& fn) {
  std::sort(values.begin(), values.end());
  do {
    fn(values);
  } while (std::next_permutation(values.begin(), values.end()));
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const IndexSet&)>& fn) {
  IndexSet cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      fn(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

IntMatrix rows_to_matrix(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

// Places `values` on existing rows `overlap` plus fresh rows appended to
// `base` (a rows x k block), as a new last column, for every distinct
// arrangement.
void place_column(const std::vector<IntVector>& base, std::size_t k, const IntVector& values,
                  const std::function<void(const std::vector<IntVector>&)>& fn) {
  const std::size_t existing = base.size();
  for (std::size_t t = 0; t <= std::min(existing, values.size()); ++t) {
    const std::size_t fresh = values.size() - t;
    for_each_subset(existing, t, [&](const IndexSet& overlap) {
      IndexSet slots = overlap;
      for (std::size_t f = 0; f < fresh; ++f) slots.push_back(existing + f);
      distinct_permutations(values, [&](const IntVector& arrangement) {
        std::vector<IntVector> rows = base;
        for (auto& row : rows) row.push_back(0);
        for (std::size_t f = 0; f < fresh; ++f) rows.emplace_back(k + 1, 0);
        for (std::size_t s = 0; s < slots.size(); ++s) rows[slots[s]][k] = arrangement[s];
        fn(rows);
      });
    });
  }
}

IntVector column_of(const std::vector<IntVector>& rows, std::size_t j) {
  IntVector v;
  for (const auto& r : rows) v.push_back(r[j]);
  return v;
}

IntVector sorted_nonzero(const IntVector& v) {
  IntVector out;
  for (const auto& x : v) {
    if (x != 0) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Each column's top-block entries outside the other's support: at most one,
// and it must be -1.
bool passes_support_prefilter(const IntVector& a, const IntVector& b) {
  auto outside = [](const IntVector& x, const IntVector& y) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0 && y[i] == 0) {
        if (x[i] != -1) return false;
        ++count;
      }
    }
    return count <= 1;
  };
  return outside(a, b) && outside(b, a);
}

bool extension_holds(const IntMatrix& block, const Integer& delta) {
  return !zero_sum_extension_violation(unit_row_embedding(block), delta).has_value();
}

}  // namespace

Integer gamma(std::span<const Integer> a) {
  Integer sum = 0, positive = 0;
  bool nonzero = false;
  for (const auto& x : a) {
    sum += x;
    if (x > 0) positive += x;
    if (x != 0) nonzero = true;
  }
  if (!nonzero) throw DomainError("gamma: zero vector");
  if (sum != 0) throw DomainError("gamma: entries must sum to zero");
  return positive;
}

Integer clique_extension_max_subdet(std::span<const Integer> a, int r) {
  if (r < 1 || a.size() != static_cast<std::size_t>(r) + 1) {
    throw DimensionError("clique_extension_max_subdet: vector length must be r + 1");
  }
  return std::max(Integer(1), gamma(a));
}

IntMatrix clique_extension_matrix(const IntMatrix& y) { return clique_matrix(y.rows()).hconcat(y); }

ExtensionMaximum zero_sum_extension_max(const IntMatrix& y) {
  require_zero_sum(y);
  Integer best = 1;
  IndexSet best_cols;
  std::vector<std::size_t> best_label;
  QuotientSearch search(y);
  search.run([&](const IndexSet& cols, const std::vector<std::size_t>& label, const Integer& v) {
    if (v > best) {
      best = v;
      best_cols = cols;
      best_label = label;
    }
    return true;
  });
  if (best_cols.empty()) return ExtensionMaximum{1, spanning_path_witness(y)};
  return ExtensionMaximum{best, build_witness(y, best_cols, best_label, best)};
}

std::optional<SubmatrixWitness> zero_sum_extension_violation(const IntMatrix& y, const Integer& bound) {
  require_zero_sum(y);
  if (bound < 1) return spanning_path_witness(y);
  std::optional<SubmatrixWitness> hit;
  QuotientSearch search(y);
  search.run([&](const IndexSet& cols, const std::vector<std::size_t>& label, const Integer& v) {
    if (v > bound) {
      hit = build_witness(y, cols, label, v);
      return false;
    }
    return true;
  });
  return hit;
}

CanonicalColumn canonical_column(std::span<const Integer> a) {
  IntVector pos = sorted_nonzero(IntVector(a.begin(), a.end()));
  IntVector neg;
  for (const auto& x : a) {
    if (x != 0) neg.push_back(-x);
  }
  std::sort(neg.begin(), neg.end(), std::greater<>());
  if (neg > pos) return CanonicalColumn{neg, true};
  return CanonicalColumn{pos, false};
}

std::vector<CanonicalColumn> enumerate_single_extensions(int delta) {
  if (delta < 1) throw DomainError("enumerate_single_extensions: delta must be positive");
  std::set<CanonicalColumn> found;
  for (int p = 1; p <= delta; ++p) {
    for (const auto& plus : partitions(p)) {
      for (const auto& minus : partitions(p)) {
        IntVector a;
        for (int x : plus.parts()) a.emplace_back(x);
        for (int x : minus.parts()) a.emplace_back(-x);
        if (a.size() == 2) continue;  // (x, -x) is parallel to e_i - e_j
        found.insert(canonical_column(a));
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<IntVector> unit_row_residues(int delta) {
  std::set<IntVector> out;
  for (const auto& col : enumerate_single_extensions(delta)) {
    for (int sign : {1, -1}) {
      IntVector v = col.reduced;
      for (auto& x : v) x *= sign;
      auto it = std::find(v.begin(), v.end(), Integer(1));
      if (it == v.end()) continue;
      v.erase(it);
      std::sort(v.begin(), v.end(), std::greater<>());
      out.insert(v);
    }
  }
  return {out.begin(), out.end()};
}

IntMatrix CanonicalBlock::matrix() const { return rows_to_matrix(rows, arity()); }

IntVector CanonicalBlock::column(std::size_t j) const { return column_of(rows, j); }

CanonicalBlock canonical_block(const IntMatrix& block) {
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < block.rows(); ++r) {
    IntVector row = block.row(r);
    if (std::any_of(row.begin(), row.end(), [](const Integer& x) { return x != 0; })) rows.push_back(row);
  }
  std::vector<std::size_t> perm(block.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::optional<std::vector<IntVector>> best;
  do {
    std::vector<IntVector> cand;
    for (const auto& row : rows) {
      IntVector p(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) p[i] = row[perm[i]];
      cand.push_back(std::move(p));
    }
    std::sort(cand.begin(), cand.end());
    if (!best || cand < *best) best = std::move(cand);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return CanonicalBlock{*best};
}

IntMatrix unit_row_embedding(const IntMatrix& block) {
  const std::size_t k = block.cols();
  IntMatrix y(block.rows() + k, k);
  for (std::size_t r = 0; r < block.rows(); ++r) {
    for (std::size_t c = 0; c < k; ++c) y(r, c) = block(r, c);
  }
  for (std::size_t c = 0; c < k; ++c) y(block.rows() + c, c) = 1;
  return y;
}

std::vector<CanonicalBlock> enumerate_pair_extensions(int delta, PairOptions options) {
  if (delta < 1) throw DomainError("enumerate_pair_extensions: delta must be positive");
  const auto residues = unit_row_residues(delta);
  std::set<CanonicalBlock> seen, accepted;
  for (const auto& ua : residues) {
    std::vector<IntVector> base;
    for (const auto& x : ua) base.push_back(IntVector{x});
    for (const auto& ub : residues) {
      place_column(base, 1, ub, [&](const std::vector<IntVector>& rows) {
        IntVector a = column_of(rows, 0), b = column_of(rows, 1);
        if (a == b) return;
        if (options.support_prefilter && !passes_support_prefilter(a, b)) return;
        IntMatrix block = rows_to_matrix(rows, 2);
        CanonicalBlock canon = canonical_block(block);
        if (!seen.insert(canon).second) return;
        if (!extension_holds(block, delta)) return;
        // Independent confirmation on the explicit matrix.
        if (!is_delta_modular(clique_extension_matrix(unit_row_embedding(block)), delta).holds) {
          throw std::logic_error("clique quotient and direct modularity check disagree");
        }
        accepted.insert(canon);
      });
    }
  }
  return {accepted.begin(), accepted.end()};
}

TripleReport refute_triple_extensions(int delta) {
  const auto pairs = enumerate_pair_extensions(delta);
  const std::set<CanonicalBlock> pair_set(pairs.begin(), pairs.end());
  std::set<IntVector> residues;
  for (const auto& p : pairs) {
    for (std::size_t j = 0; j < 2; ++j) residues.insert(sorted_nonzero(p.column(j)));
  }
  auto pair_ok = [&](const IntVector& x, const IntVector& y) {
    IntMatrix m(x.size(), 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
      m(i, 0) = x[i];
      m(i, 1) = y[i];
    }
    return pair_set.count(canonical_block(m)) > 0;
  };

  std::set<CanonicalBlock> triples;
  for (const auto& p : pairs) {
    for (const auto& uc : residues) {
      place_column(p.rows, 2, uc, [&](const std::vector<IntVector>& rows) {
        IntVector a = column_of(rows, 0), b = column_of(rows, 1), c = column_of(rows, 2);
        if (c == a || c == b) return;
        if (!pair_ok(a, c) || !pair_ok(b, c)) return;
        triples.insert(canonical_block(rows_to_matrix(rows, 3)));
      });
    }
  }

  TripleReport report;
  for (const auto& t : triples) {
    IntMatrix y = unit_row_embedding(t.matrix());
    auto hit = zero_sum_extension_violation(y, delta);
    if (hit) {
      report.refuted.push_back(TripleRefutation{t, y, *hit});
    } else {
      report.survivors.push_back(t);
    }
  }
  return report;
}

Integer corner_det(long long a, long long b, long long c, long long d, long long e) {
  IntMatrix m{{1, 0, a, b}, {-1, 0, c, d}, {0, 1, e, 0}, {0, -1, 0, 1}};
  Integer direct = abs(det(m));
  Integer formula = abs(Integer(a + c) - Integer(b + d) * e);
  if (direct != formula) throw std::logic_error("corner determinant formula mismatch");
  return direct;
}

IntMatrix witness_pattern_b1(long long w, long long x, long long y) {
  return IntMatrix{{0, 0, -2, 1, x}, {1, 0, w, -1, y}, {0, 1, 1, 0, 0}, {0, -1, 0, 1, 0}, {-1, 0, 0, 0, 1}};
}

IntMatrix witness_pattern_b2(long long w, long long x, long long y) {
  return IntMatrix{{0, 0, -1, 0, 0, 1}, {0, 0, -1, 1, x, -1}, {1, 0, w, -1, y, 0},
                   {0, 1, 1, 0, 0, 0},  {0, -1, 0, 1, 0, 0},  {-1, 0, 0, 0, 1, 0}};
}

IntMatrix witness_pattern_b3(long long w, long long x, long long y) {
  return IntMatrix{{1 - y, 0, 0, -1, -1, y}, {0, 1 - x, 0, -1, x, -1}, {0, 0, 1 - w, w, -1, -1},
                   {0, 0, -1, 1, 0, 0},      {0, -1, 0, 0, 1, 0},      {-1, 0, 0, 0, 0, 1}};
}

}  // namespace deltamod
