#include "minor_walk.hpp"

#include "deltamod/errors.hpp"

namespace deltamod::detail {

namespace {

void collect(std::size_t rows, std::size_t k, std::size_t start, std::uint32_t mask, std::size_t left,
             std::vector<std::uint32_t>& out) {
  if (left == 0) {
    out.push_back(mask);
    return;
  }
  for (std::size_t i = start; i + left <= rows; ++i) collect(rows, k, i + 1, mask | (1u << i), left - 1, out);
}

}  // namespace

RowSubsets::RowSubsets(std::size_t rows, std::size_t max_size) : rows_(rows) {
  if (rows > kMaxRows) throw DimensionError("minor enumeration supports at most 20 rows");
  max_size = std::min(max_size, rows);
  masks_.resize(max_size + 1);
  index_of_.assign(std::size_t{1} << rows, -1);
  for (std::size_t k = 0; k <= max_size; ++k) {
    collect(rows, k, 0, 0, k, masks_[k]);
    for (std::size_t idx = 0; idx < masks_[k].size(); ++idx) index_of_[masks_[k][idx]] = static_cast<std::int32_t>(idx);
  }
  steps_.resize(max_size);
  for (std::size_t k = 0; k < max_size; ++k) {
    auto& table = steps_[k];
    table.resize(masks_[k].size() * rows);
    for (std::size_t idx = 0; idx < masks_[k].size(); ++idx) {
      const std::uint32_t m = masks_[k][idx];
      for (std::size_t row = 0; row < rows; ++row) {
        Step& st = table[idx * rows + row];
        if (m & (1u << row)) continue;
        // Laplace along the new last column: sign (-1)^(t + k), t = 0-based
        // position of `row` inside S ∪ {row}.
        const auto t = static_cast<std::size_t>(__builtin_popcount(m & ((1u << row) - 1u)));
        st.target = index_of_[m | (1u << row)];
        st.sign = ((t + k) % 2 == 0) ? 1 : -1;
      }
    }
  }
}

IndexSet RowSubsets::members(std::size_t k, std::size_t idx) const {
  IndexSet out;
  const std::uint32_t m = masks_[k][idx];
  for (std::size_t i = 0; i < rows_; ++i) {
    if (m & (1u << i)) out.push_back(i);
  }
  return out;
}

}  // namespace deltamod::detail
