#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deltamod/int_matrix.hpp"

namespace deltamod {

enum class SearchMode { kIdentityAnchored, kHnfExhaustive, kGreedySeeded };

/// "identity-anchored", "hnf-exhaustive", "greedy-seeded". Throws ParseError.
SearchMode parse_search_mode(const std::string& text);
std::string to_string(SearchMode mode);

struct SearchConfig {
  int delta = 1;
  int rank = 1;
  SearchMode mode = SearchMode::kHnfExhaustive;
  std::uint64_t node_limit = 100'000'000;
  double time_limit_seconds = 600.0;
  std::optional<IntMatrix> seed;  // required for kGreedySeeded
};

struct SearchCertificate {
  long long best_count = 0;
  IntMatrix best_matrix{1, 1};
  bool optimal = false;    // exhausted and the mode covers every rank-r matrix
  bool exhausted = false;  // the declared search space was fully explored
  std::uint64_t nodes = 0;
  long long ceiling = 0;  // delta^2 * binom(r+1, 2)
  std::string scope;      // "global", "identity-anchored" or "seed-extension"
};

/// Primitive, sign-canonical candidate columns, sorted by (max |entry|, lex).
/// identity-anchored: all of [-delta, delta]^r. hnf-exhaustive: the union
/// over Hermite bases H (primitive columns, |det H| = d <= delta) of integer
/// columns H k / d with k in [-d, d]^r. greedy-seeded: B k / |det B| with
/// k in [-delta, delta]^r for a maximum-determinant basis B of the seed.
/// Throws DomainError for bad parameters or a missing seed.
std::vector<IntVector> column_universe(int delta, int r, SearchMode mode,
                                       const std::optional<IntMatrix>& seed = std::nullopt);

/// Branch and bound for the largest pairwise non-parallel, rank-r,
/// delta-modular column set. Throws DomainError for an invalid config or an
/// infeasible seed.
SearchCertificate max_columns_search(const SearchConfig& config);

/// Full row rank, delta-modular and pairwise non-parallel.
bool verify_is_feasible(const IntMatrix& m, int delta);

}  // namespace deltamod
