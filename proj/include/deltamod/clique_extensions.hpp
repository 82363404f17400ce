#pragma once

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "deltamod/int_matrix.hpp"

namespace deltamod {

/// Largest subset sum of a zero-sum, nonzero vector (the sum of its positive
/// entries). Throws DomainError for a nonzero sum or the zero vector.
Integer gamma(std::span<const Integer> a);

/// max |det| of an r x r submatrix of [D_{r+1} a], i.e. max(1, gamma(a)).
/// Throws DimensionError unless a has length r + 1.
Integer clique_extension_max_subdet(std::span<const Integer> a, int r);

struct ExtensionMaximum {
  Integer value;             // absolute value
  SubmatrixWitness witness;  // indexes [D_n | Y], D_n columns first
};

/// Max |det| over full-rank submatrices of [D_n | Y] for Y with zero-sum
/// columns (n = rows of Y >= 2). A full-rank column choice is a forest of
/// D_n edges plus columns J of Y; contracting the forest leaves the block-sum
/// matrix of J over the forest's components, so the search runs over column
/// subsets J and set partitions of the rows into |J| + 1 blocks.
ExtensionMaximum zero_sum_extension_max(const IntMatrix& y);

/// First full-rank submatrix of [D_n | Y] with |det| > bound, in the order
/// (|J| ascending, J lexicographic, partitions by restricted growth string).
std::optional<SubmatrixWitness> zero_sum_extension_violation(const IntMatrix& y, const Integer& bound);

/// [D_n | Y].
IntMatrix clique_extension_matrix(const IntMatrix& y);

/// Nonzero entries sorted non-increasingly, taken from a or -a, whichever
/// is lexicographically greater.
struct CanonicalColumn {
  IntVector reduced;
  bool sign_flag = false;  // true when -a was used

  bool operator==(const CanonicalColumn& o) const { return reduced == o.reduced; }
  auto operator<=>(const CanonicalColumn& o) const { return reduced <=> o.reduced; }
};

CanonicalColumn canonical_column(std::span<const Integer> a);

/// Canonical zero-sum columns a with gamma(a) <= delta that are not parallel
/// to a column of D (support size 2), ascending.
std::vector<CanonicalColumn> enumerate_single_extensions(int delta);

/// Vectors obtained from an admissible single column (or its negation) by
/// removing one entry equal to 1; these are the possible nonzero parts of the
/// top block of a column that carries a dedicated unit row. Sorted
/// non-increasingly within, ascending overall.
std::vector<IntVector> unit_row_residues(int delta);

/// A k-column block [c_1 ... c_k] up to row permutation and column
/// permutation, with all-zero rows removed: the lexicographically least
/// row-sorted form over all column orders.
struct CanonicalBlock {
  std::vector<IntVector> rows;

  std::size_t arity() const { return rows.empty() ? 0 : rows.front().size(); }
  IntMatrix matrix() const;
  IntVector column(std::size_t j) const;

  bool operator==(const CanonicalBlock&) const = default;
  auto operator<=>(const CanonicalBlock&) const = default;
};

CanonicalBlock canonical_block(const IntMatrix& block);

/// Y = [block ; I_k]: each column gets its own trailing unit row.
IntMatrix unit_row_embedding(const IntMatrix& block);

struct PairOptions {
  // Keep only candidates where each column has at most one top-block entry
  // outside the other's support, and that entry is -1.
  bool support_prefilter = true;
};

/// Canonical pairs [a b], a != b, such that [D | (a;1;0) (b;0;1)] (zero-sum
/// columns, minimal number of rows) is delta-modular.
std::vector<CanonicalBlock> enumerate_pair_extensions(int delta, PairOptions options = {});

struct TripleRefutation {
  CanonicalBlock triple;
  IntMatrix embedding;       // Y, rows = triple rows + 3 unit rows
  SubmatrixWitness witness;  // in [D_n | Y], |det| > delta
};

struct TripleReport {
  std::vector<TripleRefutation> refuted;
  std::vector<CanonicalBlock> survivors;  // candidates with no violating minor
};

/// Every distinct triple whose three pairs all occur in
/// enumerate_pair_extensions(delta), each with a witness minor above delta
/// when one exists.
TripleReport refute_triple_extensions(int delta);

/// |det [[1,0,a,b],[-1,0,c,d],[0,1,e,0],[0,-1,0,1]]|, checked against |(a+c)-(b+d)e|.
Integer corner_det(long long a, long long b, long long c, long long d, long long e);

/// Witness patterns whose absolute determinants are |wx+x+3(y+1)| (first two)
/// and 4 at (w,x,y) in {(1,1,1),(0,0,0)} (third).
IntMatrix witness_pattern_b1(long long w, long long x, long long y);
IntMatrix witness_pattern_b2(long long w, long long x, long long y);
IntMatrix witness_pattern_b3(long long w, long long x, long long y);

}  // namespace deltamod
