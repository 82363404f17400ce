#include "deltamod/search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "deltamod/errors.hpp"
#include "deltamod/exact_linalg.hpp"
#include "deltamod/modularity.hpp"

namespace deltamod {

namespace {

using Vec = std::vector<std::int64_t>;
using Clock = std::chrono::steady_clock;

constexpr std::int64_t kEntryLimit = std::int64_t{1} << 24;

std::int64_t narrow(const Integer& v) {
  auto n = to_int64(v);
  if (!n || *n > kEntryLimit || *n < -kEntryLimit) throw DomainError("search entries are too large");
  return *n;
}

Vec narrow(const IntVector& v) {
  Vec out;
  for (const auto& x : v) out.push_back(narrow(x));
  return out;
}

IntVector widen(const Vec& v) { return IntVector(v.begin(), v.end()); }

// Determinant of an n x n row-major matrix; small entries only.
__int128 small_det(std::vector<__int128> a, std::size_t n) {
  if (n == 0) return 1;
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * n + k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[p * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] = (a[k * n + k] * a[i * n + j] - a[i * n + k] * a[k * n + j]) / prev;
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

// w with det([cols | c]) = w . c for r - 1 columns of length r.
Vec wedge(const std::vector<const Vec*>& cols, std::size_t r) {
  Vec w(r);
  const std::size_t k = cols.size();
  for (std::size_t skip = 0; skip < r; ++skip) {
    std::vector<__int128> m;
    m.reserve(k * k);
    for (std::size_t row = 0; row < r; ++row) {
      if (row == skip) continue;
      for (const Vec* c : cols) m.push_back((*c)[row]);
    }
    __int128 d = small_det(std::move(m), k);
    if ((skip + r - 1) % 2 == 1) d = -d;
    w[skip] = static_cast<std::int64_t>(d);
  }
  return w;
}

std::int64_t gcd_of(const Vec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

Vec sign_fixed(Vec v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    break;
  }
  return v;
}

Vec primitive_key(const Vec& v) {
  std::int64_t g = gcd_of(v);
  Vec p = v;
  for (auto& x : p) x /= g;
  return sign_fixed(p);
}

bool universe_less(const Vec& a, const Vec& b) {
  auto mag = [](const Vec& v) {
    std::int64_t m = 0;
    for (auto x : v) m = std::max(m, x < 0 ? -x : x);
    return m;
  };
  auto ma = mag(a), mb = mag(b);
  if (ma != mb) return ma < mb;
  return a < b;
}

struct Basis {
  std::vector<Vec> cols;
  std::int64_t det = 1;
};

// Primitive columns B k / d for k in [-bound, bound]^r.
std::set<Vec> lattice_columns(const Basis& b, std::int64_t bound, std::size_t r) {
  std::set<Vec> out;
  Vec k(r, -bound);
  while (true) {
    Vec y(r, 0);
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i < r; ++i) y[i] += b.cols[j][i] * k[j];
    }
    bool integral = true;
    for (auto& x : y) {
      if (x % b.det != 0) {
        integral = false;
        break;
      }
      x /= b.det;
    }
    if (integral && gcd_of(y) == 1) out.insert(sign_fixed(y));
    std::size_t i = 0;
    while (i < r && k[i] == bound) k[i++] = -bound;
    if (i == r) break;
    ++k[i];
  }
  return out;
}

// Upper-triangular Hermite bases with positive diagonal, above-diagonal
// entries reduced modulo the column's pivot, primitive columns, and
// determinant at most delta; by determinant, then diagonal, then entries.
std::vector<Basis> hermite_bases(int delta, std::size_t r) {
  std::vector<Basis> out;
  for (std::int64_t d = 1; d <= delta; ++d) {
    std::vector<std::int64_t> diag;
    std::function<void(std::int64_t)> diagonals = [&](std::int64_t rest) {
      if (diag.size() == r) {
        if (rest != 1) return;
        std::vector<Vec> cols(r, Vec(r, 0));
        for (std::size_t j = 0; j < r; ++j) cols[j][j] = diag[j];
        std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t j, std::size_t i) {
          if (j == r) {
            out.push_back(Basis{cols, d});
            return;
          }
          if (i == j) {
            if (gcd_of(cols[j]) == 1) fill(j + 1, 0);
            return;
          }
          for (std::int64_t v = 0; v < diag[j]; ++v) {
            cols[j][i] = v;
            fill(j, i + 1);
          }
          cols[j][i] = 0;
        };
        fill(0, 0);
        return;
      }
      for (std::int64_t p = 1; p <= rest; ++p) {
        if (rest % p) continue;
        diag.push_back(p);
        diagonals(rest / p);
        diag.pop_back();
      }
    };
    diagonals(d);
  }
  return out;
}

Basis seed_basis(const IntMatrix& seed) {
  auto best = max_abs_full_rank_subdet(seed);
  Basis b;
  for (std::size_t c : best.witness.cols) b.cols.push_back(narrow(seed.column(c)));
  b.det = narrow(abs(best.value));
  return b;
}

void validate(int delta, int r) {
  if (delta < 1) throw DomainError("search: delta must be positive");
  if (r < 1) throw DomainError("search: rank must be positive");
  if (r > 8) throw DomainError("search: rank above 8 is outside desk scale");
}

class BranchAndBound {
 public:
  BranchAndBound(int delta, std::size_t r, std::uint64_t node_limit, Clock::time_point deadline,
                 std::uint64_t& nodes)
      : delta_(delta), r_(r), node_limit_(node_limit), deadline_(deadline), nodes_(nodes) {}

  // Extends `forced` by candidates; returns the first set larger than
  // `incumbent` that is maximal in include-first order, if any.
  std::optional<std::vector<Vec>> run(const std::vector<Vec>& forced, const std::vector<Vec>& candidates,
                                      long long incumbent, long long ceiling) {
    best_size_ = incumbent;
    ceiling_ = ceiling;
    best_.reset();
    set_.clear();
    wedges_.clear();
    std::set<Vec> taken;
    for (const auto& c : forced) {
      add(c);
      taken.insert(primitive_key(c));
    }
    std::vector<const Vec*> cands;
    for (const auto& c : candidates) {
      if (!taken.count(primitive_key(c)) && fits(c, 0)) cands.push_back(&c);
    }
    search(cands);
    return best_;
  }

  bool aborted() const { return aborted_; }

 private:
  void add(const Vec& c) {
    const std::size_t old = set_.size();
    set_.push_back(c);
    if (r_ < 2 || old + 1 < r_ - 1) return;
    // (r-1)-subsets that contain the new column.
    std::vector<std::size_t> idx(r_ - 2);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
      if (pos == idx.size()) {
        std::vector<const Vec*> cols;
        for (auto i : idx) cols.push_back(&set_[i]);
        cols.push_back(&set_.back());
        wedges_.push_back(wedge(cols, r_));
        return;
      }
      for (std::size_t i = start; i < old; ++i) {
        idx[pos] = i;
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
  }

  void remove(std::size_t wedge_count) {
    set_.pop_back();
    wedges_.resize(wedge_count);
  }

  bool fits(const Vec& c, std::size_t first_wedge) const {
    for (std::size_t w = first_wedge; w < wedges_.size(); ++w) {
      __int128 dot = 0;
      for (std::size_t i = 0; i < r_; ++i) dot += static_cast<__int128>(wedges_[w][i]) * c[i];
      if (dot > delta_ || dot < -delta_) return false;
    }
    return true;
  }

  bool out_of_budget() {
    ++nodes_;
    if (nodes_ > node_limit_) aborted_ = true;
    if ((nodes_ & 1023) == 0 && Clock::now() > deadline_) aborted_ = true;
    return aborted_;
  }

  void search(const std::vector<const Vec*>& cands) {
    if (out_of_budget()) return;
    if (static_cast<long long>(set_.size()) > best_size_) {
      best_size_ = static_cast<long long>(set_.size());
      best_ = set_;
    }
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (best_size_ >= ceiling_ || aborted_) return;
      if (static_cast<long long>(set_.size() + cands.size() - i) <= best_size_) return;
      const std::size_t mark = wedges_.size();
      add(*cands[i]);
      std::vector<const Vec*> next;
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        if (fits(*cands[j], mark)) next.push_back(cands[j]);
      }
      search(next);
      remove(mark);
    }
  }

  const std::int64_t delta_;
  const std::size_t r_;
  const std::uint64_t node_limit_;
  const Clock::time_point deadline_;
  std::uint64_t& nodes_;
  std::vector<Vec> set_;
  std::vector<Vec> wedges_;
  std::optional<std::vector<Vec>> best_;
  long long best_size_ = 0;
  long long ceiling_ = 0;
  bool aborted_ = false;
};

std::vector<Vec> sorted_universe(const std::set<Vec>& cols) {
  std::vector<Vec> out(cols.begin(), cols.end());
  std::sort(out.begin(), out.end(), universe_less);
  return out;
}

Basis identity_basis(std::size_t r) {
  Basis b;
  for (std::size_t j = 0; j < r; ++j) {
    Vec e(r, 0);
    e[j] = 1;
    b.cols.push_back(e);
  }
  return b;
}

}  // namespace

SearchMode parse_search_mode(const std::string& text) {
  if (text == "identity-anchored") return SearchMode::kIdentityAnchored;
  if (text == "hnf-exhaustive") return SearchMode::kHnfExhaustive;
  if (text == "greedy-seeded") return SearchMode::kGreedySeeded;
  throw ParseError("unknown search mode '" + text + "'");
}

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::kIdentityAnchored:
      return "identity-anchored";
    case SearchMode::kHnfExhaustive:
      return "hnf-exhaustive";
    case SearchMode::kGreedySeeded:
      return "greedy-seeded";
  }
  return "";
}

std::vector<IntVector> column_universe(int delta, int r, SearchMode mode, const std::optional<IntMatrix>& seed) {
  validate(delta, r);
  const auto n = static_cast<std::size_t>(r);
  std::set<Vec> cols;
  switch (mode) {
    case SearchMode::kIdentityAnchored:
      cols = lattice_columns(identity_basis(n), delta, n);
      break;
    case SearchMode::kHnfExhaustive:
      for (const auto& b : hermite_bases(delta, n)) {
        auto part = lattice_columns(b, b.det, n);
        cols.insert(part.begin(), part.end());
      }
      break;
    case SearchMode::kGreedySeeded: {
      if (!seed) throw DomainError("greedy-seeded universe needs a seed matrix");
      if (seed->rows() != n || rank(*seed) != n) throw DomainError("seed must have full row rank r");
      cols = lattice_columns(seed_basis(*seed), delta, n);
      break;
    }
  }
  std::vector<IntVector> out;
  for (const auto& v : sorted_universe(cols)) out.push_back(widen(v));
  return out;
}

SearchCertificate max_columns_search(const SearchConfig& config) {
  validate(config.delta, config.rank);
  if (config.node_limit == 0 || !(config.time_limit_seconds > 0)) throw DomainError("search limits must be positive");
  const auto r = static_cast<std::size_t>(config.rank);
  const long long ceiling = static_cast<long long>(config.delta) * config.delta * config.rank * (config.rank + 1) / 2;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(config.time_limit_seconds));

  std::vector<std::pair<std::vector<Vec>, std::int64_t>> starts;  // forced columns, lattice bound
  std::vector<Basis> bases;
  std::string scope;
  switch (config.mode) {
    case SearchMode::kIdentityAnchored:
      bases.push_back(identity_basis(r));
      starts.emplace_back(bases.back().cols, config.delta);
      scope = "identity-anchored";
      break;
    case SearchMode::kHnfExhaustive:
      bases = hermite_bases(config.delta, r);
      for (const auto& b : bases) starts.emplace_back(b.cols, b.det);
      scope = "global";
      break;
    case SearchMode::kGreedySeeded: {
      if (!config.seed) throw DomainError("greedy-seeded search needs a seed matrix");
      if (config.seed->rows() != r || !verify_is_feasible(*config.seed, config.delta)) {
        throw DomainError("seed must be a feasible rank-r matrix");
      }
      bases.push_back(seed_basis(*config.seed));
      std::vector<Vec> forced;
      for (std::size_t c = 0; c < config.seed->cols(); ++c) forced.push_back(narrow(config.seed->column(c)));
      starts.emplace_back(forced, config.delta);
      scope = "seed-extension";
      break;
    }
  }

  SearchCertificate cert;
  cert.ceiling = ceiling;
  cert.scope = scope;
  std::uint64_t nodes = 0;
  BranchAndBound bnb(config.delta, r, config.node_limit, deadline, nodes);
  std::vector<Vec> best;
  bool aborted = false;
  for (std::size_t i = 0; i < bases.size() && !aborted; ++i) {
    auto universe = sorted_universe(lattice_columns(bases[i], starts[i].second, r));
    auto found = bnb.run(starts[i].first, universe, static_cast<long long>(best.size()), ceiling);
    if (found) best = *found;
    aborted = bnb.aborted();
    if (static_cast<long long>(best.size()) >= ceiling) break;
  }

  std::vector<IntVector> cols;
  for (const auto& v : best) cols.push_back(widen(v));
  cert.best_matrix = IntMatrix::from_columns(cols, r);
  cert.best_count = static_cast<long long>(best.size());
  cert.nodes = nodes;
  cert.exhausted = !aborted;
  cert.optimal = cert.exhausted && config.mode != SearchMode::kGreedySeeded;
  if (!verify_is_feasible(cert.best_matrix, config.delta)) {
    throw std::logic_error("search produced an infeasible certificate");
  }
  return cert;
}

bool verify_is_feasible(const IntMatrix& m, int delta) {
  if (delta < 1) return false;
  if (rank(m) != m.rows()) return false;
  if (!parallel_pairs(m).empty()) return false;
  return is_delta_modular(m, delta).holds;
}

}  // namespace deltamod
