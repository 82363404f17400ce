#pragma once

// Depth-first enumeration of column subsets carrying, at every node, the full
// vector of maximal-size minors (Plücker coordinates) of the chosen columns.
//
// For a chosen column set S = {c1 < ... < ck} the node holds det(A[R, S]) for
// every k-subset R of rows, in lexicographic order of R. Extending S by a
// column c is one Laplace expansion along the new last column, so each child
// costs O(#nonzero coords * #nonzero entries of c) instead of a fresh
// elimination. Column sets whose coordinates all vanish are dependent, and so
// are all their supersets; those subtrees are skipped.

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "deltamod/int_matrix.hpp"

namespace deltamod::detail {

struct Int64Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Int64Overflow{};
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Int64Overflow{};
  return out;
}

inline Integer checked_mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer checked_add(const Integer& a, const Integer& b) { return a + b; }

inline std::int64_t magnitude(std::int64_t v) {
  if (v == std::numeric_limits<std::int64_t>::min()) throw Int64Overflow{};
  return v < 0 ? -v : v;
}
inline Integer magnitude(const Integer& v) { return abs(v); }

/// Lexicographically ordered row subsets of every size and the Laplace
/// extension table between consecutive sizes.
class RowSubsets {
 public:
  static constexpr std::size_t kMaxRows = 20;

  /// Tables for subset sizes 0..max_size.
  RowSubsets(std::size_t rows, std::size_t max_size);

  std::size_t rows() const { return rows_; }
  std::size_t count(std::size_t k) const { return masks_[k].size(); }
  std::uint32_t mask(std::size_t k, std::size_t idx) const { return masks_[k][idx]; }
  IndexSet members(std::size_t k, std::size_t idx) const;

  struct Step {
    std::int32_t target = -1;  // index of S ∪ {row} among (k+1)-subsets, -1 if row ∈ S
    std::int8_t sign = 0;
  };
  const Step& step(std::size_t k, std::size_t idx, std::size_t row) const {
    return steps_[k][idx * rows_ + row];
  }

 private:
  std::size_t rows_;
  std::vector<std::vector<std::uint32_t>> masks_;
  std::vector<std::int32_t> index_of_;
  std::vector<std::vector<Step>> steps_;
};

enum class WalkAction { kDescend, kSkip, kStop };

template <typename Scalar>
class MinorWalker {
 public:
  /// `columns[j]` is column j (length = rows). `max_depth` caps |S|.
  /// When `leaves_only_depth` is set, branches that can no longer reach that
  /// depth are cut.
  MinorWalker(const std::vector<std::vector<Scalar>>& columns, const RowSubsets& subsets, std::size_t max_depth,
              std::optional<std::size_t> leaves_only_depth = std::nullopt)
      : columns_(columns), subsets_(subsets), max_depth_(max_depth), target_depth_(leaves_only_depth) {
    coords_.resize(max_depth_ + 1);
    for (std::size_t k = 0; k <= max_depth_; ++k) coords_[k].assign(subsets_.count(k), Scalar(0));
    coords_[0][0] = Scalar(1);
  }

  /// Visits every independent column subset whose smallest column lies in
  /// [first_begin, first_end), in lexicographic order. The visitor receives
  /// (cols, coords) and returns a WalkAction.
  template <typename Visitor>
  bool run(Visitor&& visit, std::size_t first_begin, std::size_t first_end) {
    stack_.clear();
    return descend(visit, 0, first_begin, first_end);
  }

 private:
  template <typename Visitor>
  bool descend(Visitor& visit, std::size_t depth, std::size_t begin, std::size_t end) {
    const std::size_t n = columns_.size();
    for (std::size_t c = begin; c < end; ++c) {
      if (target_depth_ && *target_depth_ > depth && n - c < *target_depth_ - depth) break;
      if (!extend(depth, c)) continue;
      stack_.push_back(c);
      WalkAction action = visit(std::span<const std::size_t>(stack_), std::span<const Scalar>(coords_[depth + 1]));
      if (action == WalkAction::kStop) return false;
      if (action == WalkAction::kDescend && depth + 1 < max_depth_) {
        if (!descend(visit, depth + 1, c + 1, n)) return false;
      }
      stack_.pop_back();
    }
    return true;
  }

  // coords_[depth+1] <- coords_[depth] ∧ column c. Returns false when all vanish.
  bool extend(std::size_t depth, std::size_t c) {
    const auto& col = columns_[c];
    const auto& prev = coords_[depth];
    auto& next = coords_[depth + 1];
    std::fill(next.begin(), next.end(), Scalar(0));
    nz_rows_.clear();
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] != 0) nz_rows_.push_back(i);
    }
    if (nz_rows_.empty()) return false;
    bool any = false;
    for (std::size_t s = 0; s < prev.size(); ++s) {
      if (prev[s] == 0) continue;
      for (std::size_t i : nz_rows_) {
        const auto& st = subsets_.step(depth, s, i);
        if (st.target < 0) continue;
        Scalar term = checked_mul(col[i], prev[s]);
        if (st.sign < 0) term = -term;
        next[static_cast<std::size_t>(st.target)] = checked_add(next[static_cast<std::size_t>(st.target)], term);
      }
    }
    for (const auto& v : next) {
      if (v != 0) {
        any = true;
        break;
      }
    }
    return any;
  }

  const std::vector<std::vector<Scalar>>& columns_;
  const RowSubsets& subsets_;
  std::size_t max_depth_;
  std::optional<std::size_t> target_depth_;
  std::vector<std::vector<Scalar>> coords_;
  std::vector<std::size_t> stack_;
  std::vector<std::size_t> nz_rows_;
};

/// Runs `branch(first_column)` for every first column, possibly on several
/// threads. Branch i only runs while `keep_going(i)` holds.
template <typename BranchFn, typename KeepGoing>
void for_each_branch(std::size_t branches, std::size_t threads, BranchFn&& branch, KeepGoing&& keep_going) {
  threads = std::max<std::size_t>(1, std::min(threads, branches));
  if (threads == 1) {
    for (std::size_t b = 0; b < branches; ++b) {
      if (!keep_going(b)) break;
      branch(b);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::mutex error_mutex;
  std::exception_ptr error;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          std::size_t b = next.fetch_add(1);
          if (b >= branches || !keep_going(b)) break;
          branch(b);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(branches);
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace deltamod::detail
