#pragma once

#include <map>
#include <string>
#include <vector>

#include "deltamod/extremal_families.hpp"
#include "deltamod/int_matrix.hpp"

namespace deltamod {

struct ParallelClasses {
  std::vector<IndexSet> classes;  // ordered by smallest member
  IndexSet loops;                 // zero columns

  std::size_t points() const { return classes.size(); }
};

ParallelClasses parallel_classes(const IntMatrix& m);

/// Long lines (>= 3 points) through column e, as sorted element index sets,
/// ordered lexicographically. Throws DomainError for a bad index or a zero column.
std::vector<IndexSet> long_lines_through(const IntMatrix& m, std::size_t e);

/// Multiset of line lengths, keyed by length.
class LineMultiset {
 public:
  LineMultiset() = default;
  explicit LineMultiset(std::map<long long, long long> counts);

  /// "3:2,4:2"; the empty multiset is "". Throws ParseError.
  static LineMultiset parse(const std::string& text);

  void add(long long length, long long times = 1);
  long long count(long long length) const;
  long long total() const;
  const std::map<long long, long long>& counts() const { return counts_; }
  std::string to_string() const;

  bool operator==(const LineMultiset&) const = default;

 private:
  std::map<long long, long long> counts_;
};

/// Point counts of the long lines through e.
LineMultiset line_length_multiset(const IntMatrix& m, std::size_t e);

/// Closed form of the long-line multiset through the designated element of
/// build_A(delta, lambda, r). Throws DomainError if r < m + 1.
LineMultiset nu_formula(int delta, const Partition& lambda, int r);

/// Inverts nu_formula. Throws DomainError when nu is not in its image.
Partition recover_partition(const LineMultiset& nu, int delta, int r);

struct NonIsoCertificate {
  std::string left_id;
  std::string right_id;
  LineMultiset left_nu;
  LineMultiset right_nu;
  bool distinct = false;
};

struct DistinguishingReport {
  std::vector<std::pair<std::string, LineMultiset>> constructions;  // build_A by partitions(), then Lee
  std::vector<NonIsoCertificate> certificates;                      // all pairs i < j
  bool lee_uniform = false;      // Lee multiset is (r-1) copies of delta+2
  bool lee_length_rare = false;  // no build_A multiset has more than one line of length delta+2
  bool all_distinct = false;
};

/// Throws DomainError unless delta >= 2 and r >= delta + 1.
DistinguishingReport distinguishing_report(int delta, int r);

}  // namespace deltamod
