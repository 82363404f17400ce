#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltamod/int_matrix.hpp"

namespace deltamod {

/// Non-increasing sequence of positive integers.
class Partition {
 public:
  /// Throws DomainError unless parts is non-empty, positive and non-increasing.
  explicit Partition(std::vector<int> parts);

  /// Parses "2" or "1,1". Unsorted input is rejected, not reordered.
  static Partition parse(const std::string& text);

  const std::vector<int>& parts() const { return parts_; }
  int n() const;
  std::size_t m() const { return parts_.size(); }
  std::string to_string() const;  // "1,1"

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of n, reverse-lexicographic: (n) first, (1,...,1) last.
std::vector<Partition> partitions(int n);

/// Number of partitions of n, by the standard recurrence.
long long partition_count(int n);

struct ExtremalMatrix {
  IntMatrix matrix;
  int delta = 0;
  int r = 0;
  std::optional<Partition> partition;  // absent for the A(Δ,r) family
  std::size_t designated_element = 0;  // column index of e_1
};

/// Columns e_i; e_i - e_j (i<j); k e_1 + e_{i+1}; k e_1 + e_{i+1} - e_j,
/// labelled A-1 .. A-4, each class in quantifier order (i, then k, then j).
ExtremalMatrix build_A(int delta, const Partition& lambda, int r);

/// Columns e_i; e_i - e_j; k e_1 - e_i (i = 2..r, k = 2..Δ), labelled A-1, A-2, A-5.
ExtremalMatrix build_A_lee(int delta, int r);

/// The 3 x 11 rank-3, 3-modular matrix with more columns than the general bound.
IntMatrix sporadic_rank3();

/// binom(r+1, 2) + (Δ-1)(r-1).
long long expected_count(int delta, int r);

/// [D_n] with columns e_i - e_j, i < j, i outer.
IntMatrix clique_matrix(std::size_t n);

}  // namespace deltamod
