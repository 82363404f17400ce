#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "deltamod/int_matrix.hpp"

namespace deltamod {

struct ModularityCheck {
  bool holds = true;
  std::optional<SubmatrixWitness> violation;  // a rank-sized submatrix with |det| > Δ
};

/// Decides whether every rank(M)-sized subdeterminant has |det| <= delta,
/// stopping at the first violation. When the columns contain e_1..e_r
/// (r = rows) only square minors of the remaining columns are scanned.
/// Throws DomainError for delta < 1 and DegenerateRankError for rank 0.
ModularityCheck is_delta_modular(const IntMatrix& m, const Integer& delta);

struct ModularityReport {
  Integer delta;                      // exact max |rank-sized subdeterminant|
  std::optional<Integer> queried;     // bound passed by the caller, if any
  bool satisfies_bound = true;        // delta <= queried (true when no query)
  SubmatrixWitness witness;           // |witness.det| == delta
  bool pairwise_non_parallel = true;
  std::vector<std::pair<std::size_t, std::size_t>> parallel_violations;
};

ModularityReport modularity_level(const IntMatrix& m, const std::optional<Integer>& queried = std::nullopt);

/// Column index of e_i for every row i, if all unit columns are present.
std::optional<IndexSet> identity_columns(const IntMatrix& m);

/// All column pairs (i < j) that are parallel, in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> parallel_pairs(const IntMatrix& m);

/// Appends the row -1ᵀM so every column sums to zero.
IntMatrix append_zero_sum_row(const IntMatrix& m);

/// Removes the last row. Throws DimensionError for single-row input.
IntMatrix drop_last_row(const IntMatrix& m);

}  // namespace deltamod
