#include "deltamod/int_matrix.hpp"

#include <mutex>

#include "deltamod/errors.hpp"

namespace deltamod {

namespace {

std::mutex policy_mutex;
ArithmeticPolicy current_policy;

}  // namespace

ArithmeticPolicy arithmetic_policy() {
  std::lock_guard lock(policy_mutex);
  return current_policy;
}

void set_arithmetic_policy(const ArithmeticPolicy& policy) {
  std::lock_guard lock(policy_mutex);
  current_policy = policy;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix must have at least one row and one column");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : IntMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    std::size_t c = 0;
    for (long long v : row) (*this)(r, c++) = v;
    ++r;
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  if (rows.empty()) throw DimensionError("matrix must have at least one row");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DimensionError("ragged row list");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw DimensionError("column length does not match row count");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::set_column(std::size_t c, std::span<const Integer> values) {
  if (values.size() != rows_) throw DimensionError("column length does not match row count");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

IntMatrix IntMatrix::submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  IntMatrix m(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (std::size_t j = 0; j < col_idx.size(); ++j) m(i, j) = (*this)(row_idx[i], col_idx[j]);
  }
  if (has_labels()) {
    std::vector<std::string> l;
    for (std::size_t c : col_idx) l.push_back(labels_[c]);
    m.labels_ = std::move(l);
  }
  return m;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> col_idx) const {
  IndexSet all(rows_);
  for (std::size_t i = 0; i < rows_; ++i) all[i] = i;
  return submatrix(all, col_idx);
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
  if (other.rows_ != rows_) throw DimensionError("hconcat: row counts differ");
  IntMatrix m(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) m(r, cols_ + c) = other(r, c);
  }
  if (has_labels() && other.has_labels()) {
    m.labels_ = labels_;
    m.labels_.insert(m.labels_.end(), other.labels_.begin(), other.labels_.end());
  }
  return m;
}

IntMatrix IntMatrix::append_column(std::span<const Integer> values, const std::string& label) const {
  if (values.size() != rows_) throw DimensionError("append_column: length does not match row count");
  IntMatrix m(rows_, cols_ + 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    m(r, cols_) = values[r];
  }
  if (has_labels()) {
    m.labels_ = labels_;
    m.labels_.push_back(label);
  }
  return m;
}

IntMatrix IntMatrix::append_row(std::span<const Integer> values) const {
  if (values.size() != cols_) throw DimensionError("append_row: length does not match column count");
  IntMatrix m(rows_ + 1, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  for (std::size_t c = 0; c < cols_; ++c) m(rows_, c) = values[c];
  m.labels_ = labels_;
  return m;
}

void IntMatrix::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != cols_) throw DimensionError("label count must equal column count");
  labels_ = std::move(labels);
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("matrix product: inner dimensions differ");
  IntMatrix m(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) m(i, j) += a * rhs(k, j);
    }
  }
  m.labels_ = rhs.labels_;
  return m;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

Integer IntMatrix::max_abs_entry() const {
  Integer best = 0;
  for (const auto& v : data_) {
    Integer a = abs(v);
    if (a > best) best = a;
  }
  return best;
}

IntVector make_vector(std::initializer_list<long long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long long x : values) v.emplace_back(x);
  return v;
}

}  // namespace deltamod
