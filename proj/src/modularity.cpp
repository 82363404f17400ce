#include "deltamod/modularity.hpp"

#include <algorithm>

#include "deltamod/errors.hpp"
#include "deltamod/exact_linalg.hpp"

namespace deltamod {

namespace {

struct Anchored {
  IndexSet unit_cols;   // unit_cols[i] = column holding e_i
  IndexSet other_cols;  // everything else, ascending
  IntMatrix block;      // M restricted to other_cols
};

std::optional<Anchored> split_identity(const IntMatrix& m) {
  auto units = identity_columns(m);
  if (!units) return std::nullopt;
  std::vector<bool> used(m.cols(), false);
  for (std::size_t c : *units) used[c] = true;
  IndexSet others;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!used[c]) others.push_back(c);
  }
  if (others.empty()) return Anchored{*units, others, IntMatrix::identity(1)};
  return Anchored{*units, others, m.select_columns(others)};
}

// Completes a square minor of the non-identity block to a full r x r
// submatrix of M by adding the unit columns of the rows it misses.
SubmatrixWitness complete(const IntMatrix& m, const Anchored& a, const SubmatrixWitness& minor) {
  IndexSet cols;
  for (std::size_t c : minor.cols) cols.push_back(a.other_cols[c]);
  std::vector<bool> covered(m.rows(), false);
  for (std::size_t r : minor.rows) covered[r] = true;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!covered[r]) cols.push_back(a.unit_cols[r]);
  }
  std::sort(cols.begin(), cols.end());
  IndexSet rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = r;
  Integer d = det(m.submatrix(rows, cols));
  return SubmatrixWitness{rows, cols, d};
}

SubmatrixWitness unit_witness(const IntMatrix& m, const Anchored& a) {
  IndexSet rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = r;
  IndexSet cols = a.unit_cols;
  std::sort(cols.begin(), cols.end());
  return SubmatrixWitness{rows, cols, det(m.submatrix(rows, cols))};
}

}  // namespace

std::optional<IndexSet> identity_columns(const IntMatrix& m) {
  IndexSet units(m.rows(), m.cols());
  std::size_t found = 0;
  for (std::size_t c = 0; c < m.cols() && found < m.rows(); ++c) {
    std::size_t hot = m.rows();
    bool unit = true;
    for (std::size_t r = 0; r < m.rows() && unit; ++r) {
      if (m(r, c) == 0) continue;
      if (m(r, c) == 1 && hot == m.rows()) {
        hot = r;
      } else {
        unit = false;
      }
    }
    if (unit && hot < m.rows() && units[hot] == m.cols()) {
      units[hot] = c;
      ++found;
    }
  }
  if (found < m.rows()) return std::nullopt;
  return units;
}

ModularityCheck is_delta_modular(const IntMatrix& m, const Integer& delta) {
  if (delta < 1) throw DomainError("is_delta_modular: delta must be at least 1");
  if (auto a = split_identity(m)) {
    if (a->other_cols.empty()) return {};
    auto hit = find_square_subdet_above(a->block, delta);
    if (!hit) return {};
    return ModularityCheck{false, complete(m, *a, *hit)};
  }
  auto hit = find_full_rank_subdet_above(m, delta);
  if (!hit) return {};
  return ModularityCheck{false, *hit};
}

std::vector<std::pair<std::size_t, std::size_t>> parallel_pairs(const IntMatrix& m) {
  // Group by sign-normalized primitive direction; zero columns are parallel to all.
  std::vector<IntVector> keys(m.cols());
  std::vector<bool> zero(m.cols(), false);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    IntVector col = m.column(c);
    if (std::all_of(col.begin(), col.end(), [](const Integer& x) { return x == 0; })) {
      zero[c] = true;
    } else {
      keys[c] = sign_canonical(primitive_part(col));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (zero[i] || zero[j] || keys[i] == keys[j]) out.emplace_back(i, j);
    }
  }
  return out;
}

ModularityReport modularity_level(const IntMatrix& m, const std::optional<Integer>& queried) {
  ModularityReport rep;
  if (auto a = split_identity(m)) {
    rep.delta = 1;
    rep.witness = unit_witness(m, *a);
    if (!a->other_cols.empty()) {
      SubdetMaximum mx = max_abs_square_subdet(a->block);
      if (mx.value > 1) {
        rep.delta = mx.value;
        rep.witness = complete(m, *a, mx.witness);
      }
    }
  } else {
    SubdetMaximum mx = max_abs_full_rank_subdet(m);
    rep.delta = mx.value;
    rep.witness = mx.witness;
  }
  rep.queried = queried;
  rep.satisfies_bound = !queried || rep.delta <= *queried;
  rep.parallel_violations = parallel_pairs(m);
  rep.pairwise_non_parallel = rep.parallel_violations.empty();
  return rep;
}

IntMatrix append_zero_sum_row(const IntMatrix& m) {
  IntVector row(m.cols(), 0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) row[c] -= m(r, c);
  }
  return m.append_row(row);
}

IntMatrix drop_last_row(const IntMatrix& m) {
  if (m.rows() < 2) throw DimensionError("drop_last_row: matrix has a single row");
  IndexSet rows(m.rows() - 1), cols(m.cols());
  for (std::size_t r = 0; r + 1 < m.rows(); ++r) rows[r] = r;
  for (std::size_t c = 0; c < m.cols(); ++c) cols[c] = c;
  return m.submatrix(rows, cols);
}

}  // namespace deltamod
