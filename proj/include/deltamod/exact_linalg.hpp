#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "deltamod/int_matrix.hpp"

namespace deltamod {

/// Exact determinant by fraction-free (Bareiss) elimination.
/// Throws DimensionError for non-square input.
Integer det(const IntMatrix& m);

/// Rank over the rationals.
std::size_t rank(const IntMatrix& m);

struct SubdetMaximum {
  Integer value;  // absolute value
  SubmatrixWitness witness;
};

/// Maximum |det| over all rank(M) x rank(M) submatrices. Column subsets are
/// scanned lexicographically (outer), row subsets lexicographically (inner);
/// the first maximizer is reported. Throws DegenerateRankError on rank 0.
SubdetMaximum max_abs_full_rank_subdet(const IntMatrix& m);

/// Maximum |det| over square submatrices of every size >= 1. For the zero
/// matrix the value is 0 and the witness is empty.
SubdetMaximum max_abs_square_subdet(const IntMatrix& m);

/// First rank(M)-sized submatrix (same order as above) with |det| > bound.
std::optional<SubmatrixWitness> find_full_rank_subdet_above(const IntMatrix& m, const Integer& bound);

/// First square submatrix of any size with |det| > bound. Column subsets are
/// visited in depth-first lexicographic order ({0}, {0,1}, {0,1,2}, ..., {1}, ...).
std::optional<SubmatrixWitness> find_square_subdet_above(const IntMatrix& m, const Integer& bound);

/// True iff all 2x2 minors of [u v] vanish. Throws DimensionError on length mismatch.
bool is_parallel(std::span<const Integer> u, std::span<const Integer> v);

/// v / gcd(v). Throws DomainError for the zero vector.
IntVector primitive_part(std::span<const Integer> v);

/// Integer vector with first nonzero entry positive (v or -v).
IntVector sign_canonical(std::span<const Integer> v);

/// Elementary unimodular row operation on rows i and j:
///   (row_i, row_j) <- (p*row_i + q*row_j, s*row_i + t*row_j), p*t - q*s = ±1.
/// When i == j only `p` (= ±1) is used.
struct RowOperation {
  std::size_t i = 0;
  std::size_t j = 0;
  Integer p = 1, q = 0, s = 0, t = 1;
};

struct HermiteResult {
  IntMatrix transformed;  // U * M
  IntMatrix unimodular;   // U
  std::vector<RowOperation> operations;
};

/// Unimodular row reduction making M[:, basis_cols] upper triangular with
/// positive diagonal and 0 <= h_ij < h_jj above the diagonal. Needs
/// |basis_cols| = rows and a nonsingular block (DegenerateRankError otherwise).
HermiteResult hermite_triangularize(const IntMatrix& m, std::span<const std::size_t> basis_cols);

void apply_row_operation(IntMatrix& m, const RowOperation& op);

/// U^{-1}, rebuilt by undoing the recorded operations in reverse order.
IntMatrix inverse_from_operations(const std::vector<RowOperation>& ops, std::size_t n);

}  // namespace deltamod
