#include "deltamod/extremal_families.hpp"

#include <charconv>
#include <numeric>

#include "deltamod/errors.hpp"

namespace deltamod {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("partition must have at least one part");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw DomainError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be non-increasing");
  }
}

Partition Partition::parse(const std::string& text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("invalid partition '" + text + "'");
    }
    parts.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  try {
    return Partition(std::move(parts));
  } catch (const DomainError& e) {
    throw ParseError("invalid partition '" + text + "': " + e.what());
  }
}

int Partition::n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

std::vector<Partition> partitions(int n) {
  if (n < 1) throw DomainError("partitions: n must be positive");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

long long partition_count(int n) {
  if (n < 0) return 0;
  std::vector<long long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part) {
    for (int s = part; s <= n; ++s) p[static_cast<std::size_t>(s)] += p[static_cast<std::size_t>(s - part)];
  }
  return p[static_cast<std::size_t>(n)];
}

long long expected_count(int delta, int r) {
  return static_cast<long long>(r) * (r + 1) / 2 + static_cast<long long>(delta - 1) * (r - 1);
}

namespace {

class ColumnBuilder {
 public:
  explicit ColumnBuilder(int r) : r_(static_cast<std::size_t>(r)) {}

  // Entries are given as (1-based row, value) pairs.
  void add(std::initializer_list<std::pair<int, int>> entries, const char* label) {
    IntVector v(r_, 0);
    for (auto [row, val] : entries) v[static_cast<std::size_t>(row - 1)] += val;
    cols_.push_back(std::move(v));
    labels_.emplace_back(label);
  }

  IntMatrix finish() {
    IntMatrix m = IntMatrix::from_columns(cols_, r_);
    m.set_labels(labels_);
    return m;
  }

 private:
  std::size_t r_;
  std::vector<IntVector> cols_;
  std::vector<std::string> labels_;
};

void add_frame(ColumnBuilder& b, int r) {
  for (int i = 1; i <= r; ++i) b.add({{i, 1}}, "A-1");
  for (int i = 1; i <= r; ++i) {
    for (int j = i + 1; j <= r; ++j) b.add({{i, 1}, {j, -1}}, "A-2");
  }
}

}  // namespace

ExtremalMatrix build_A(int delta, const Partition& lambda, int r) {
  if (delta < 2) throw DomainError("build_A: delta must be at least 2");
  if (lambda.n() != delta - 1) throw DomainError("build_A: partition must sum to delta - 1");
  const int m = static_cast<int>(lambda.m());
  if (r < m + 1) throw DomainError("build_A: rank must be at least m + 1");
  ColumnBuilder b(r);
  add_frame(b, r);
  for (int i = 1; i <= m; ++i) {
    for (int k = 1; k <= lambda.parts()[static_cast<std::size_t>(i - 1)]; ++k) b.add({{1, k}, {i + 1, 1}}, "A-3");
  }
  for (int i = 1; i <= m; ++i) {
    for (int k = 1; k <= lambda.parts()[static_cast<std::size_t>(i - 1)]; ++k) {
      for (int j = 1; j <= r; ++j) {
        if (j == 1 || j == i + 1) continue;
        b.add({{1, k}, {i + 1, 1}, {j, -1}}, "A-4");
      }
    }
  }
  return ExtremalMatrix{b.finish(), delta, r, lambda, 0};
}

ExtremalMatrix build_A_lee(int delta, int r) {
  if (delta < 1) throw DomainError("build_A_lee: delta must be at least 1");
  if (r < 2) throw DomainError("build_A_lee: rank must be at least 2");
  ColumnBuilder b(r);
  add_frame(b, r);
  for (int i = 2; i <= r; ++i) {
    for (int k = 2; k <= delta; ++k) b.add({{1, k}, {i, -1}}, "A-5");
  }
  return ExtremalMatrix{b.finish(), delta, r, std::nullopt, 0};
}

IntMatrix sporadic_rank3() {
  return IntMatrix{{1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1},
                   {0, 1, 0, -1, 0, 1, 1, 2, 1, 2, 1},
                   {0, 0, 1, 0, -1, -1, -2, -3, -2, -3, -3}};
}

IntMatrix clique_matrix(std::size_t n) {
  if (n < 2) throw DomainError("clique_matrix: need at least two rows");
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      IntVector v(n, 0);
      v[i] = 1;
      v[j] = -1;
      cols.push_back(std::move(v));
    }
  }
  return IntMatrix::from_columns(cols, n);
}

}  // namespace deltamod
