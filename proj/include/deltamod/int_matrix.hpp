#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "deltamod/integer.hpp"

namespace deltamod {

using IntVector = std::vector<Integer>;
using IndexSet = std::vector<std::size_t>;

/// Dense matrix of arbitrary-precision integers, row-major, with optional
/// per-column labels. Shapes are at least 1x1.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  void set_column(std::size_t c, std::span<const Integer> values);

  IntMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  IntMatrix select_columns(std::span<const std::size_t> col_idx) const;
  IntMatrix transposed() const;

  /// [this | other]; labels are kept only when both sides carry them.
  IntMatrix hconcat(const IntMatrix& other) const;
  IntMatrix append_column(std::span<const Integer> values, const std::string& label = {}) const;
  IntMatrix append_row(std::span<const Integer> values) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);
  void clear_labels() { labels_.clear(); }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& other) const;

  Integer max_abs_entry() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
  std::vector<std::string> labels_;
};

/// A square submatrix addressed by sorted row/column index sets, with its
/// signed determinant.
struct SubmatrixWitness {
  IndexSet rows;
  IndexSet cols;
  Integer det;

  bool operator==(const SubmatrixWitness&) const = default;
};

IntVector make_vector(std::initializer_list<long long> values);

}  // namespace deltamod
