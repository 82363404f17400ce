#include "deltamod/matroid_lines.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "deltamod/errors.hpp"
#include "deltamod/exact_linalg.hpp"

namespace deltamod {

namespace {

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// Whether c lies in the span of u and v (which span a plane).
bool in_plane(const IntMatrix& m, std::size_t u, std::size_t v, std::size_t c) {
  const std::size_t idx[3] = {u, v, c};
  return rank(m.select_columns(idx)) <= 2;
}

long long parse_count(const std::string& tok, const std::string& text) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid line multiset '" + text + "'");
  }
  return v;
}

}  // namespace

ParallelClasses parallel_classes(const IntMatrix& m) {
  ParallelClasses out;
  std::map<IntVector, std::size_t> index;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    IntVector col = m.column(c);
    if (is_zero(col)) {
      out.loops.push_back(c);
      continue;
    }
    IntVector key = sign_canonical(primitive_part(col));
    auto [it, fresh] = index.emplace(key, out.classes.size());
    if (fresh) out.classes.emplace_back();
    out.classes[it->second].push_back(c);
  }
  return out;
}

std::vector<IndexSet> long_lines_through(const IntMatrix& m, std::size_t e) {
  if (e >= m.cols()) throw DomainError("element index out of range");
  if (is_zero(m.column(e))) throw DomainError("element is a loop");
  ParallelClasses pc = parallel_classes(m);
  std::vector<std::size_t> class_of(m.cols(), pc.classes.size());
  for (std::size_t i = 0; i < pc.classes.size(); ++i) {
    for (std::size_t c : pc.classes[i]) class_of[c] = i;
  }
  const std::size_t home = class_of[e];
  std::set<IndexSet> lines;
  std::vector<bool> covered(pc.classes.size(), false);
  covered[home] = true;
  for (std::size_t i = 0; i < pc.classes.size(); ++i) {
    if (covered[i]) continue;
    const std::size_t f = pc.classes[i].front();
    IndexSet line;
    std::set<std::size_t> points;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (class_of[c] == pc.classes.size()) continue;
      if (class_of[c] == home || class_of[c] == i || in_plane(m, e, f, c)) {
        line.push_back(c);
        points.insert(class_of[c]);
      }
    }
    for (std::size_t p : points) covered[p] = true;
    if (points.size() >= 3) lines.insert(line);
  }
  return {lines.begin(), lines.end()};
}

LineMultiset::LineMultiset(std::map<long long, long long> counts) {
  for (auto [len, times] : counts) add(len, times);
}

LineMultiset LineMultiset::parse(const std::string& text) {
  LineMultiset out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("invalid line multiset '" + text + "': expected length:count");
    long long len = parse_count(item.substr(0, colon), text);
    long long times = parse_count(item.substr(colon + 1), text);
    if (len < 3 || times < 1) throw ParseError("invalid line multiset '" + text + "': lengths >= 3, counts >= 1");
    out.add(len, times);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void LineMultiset::add(long long length, long long times) {
  if (times < 0) throw DomainError("negative multiplicity");
  if (times > 0) counts_[length] += times;
}

long long LineMultiset::count(long long length) const {
  auto it = counts_.find(length);
  return it == counts_.end() ? 0 : it->second;
}

long long LineMultiset::total() const {
  long long t = 0;
  for (auto [len, times] : counts_) t += times;
  return t;
}

std::string LineMultiset::to_string() const {
  std::string s;
  for (auto [len, times] : counts_) {
    if (!s.empty()) s += ',';
    s += std::to_string(len) + ':' + std::to_string(times);
  }
  return s;
}

LineMultiset line_length_multiset(const IntMatrix& m, std::size_t e) {
  ParallelClasses pc = parallel_classes(m);
  std::vector<std::size_t> class_of(m.cols(), 0);
  for (std::size_t i = 0; i < pc.classes.size(); ++i) {
    for (std::size_t c : pc.classes[i]) class_of[c] = i;
  }
  LineMultiset out;
  for (const auto& line : long_lines_through(m, e)) {
    std::set<std::size_t> points;
    for (std::size_t c : line) points.insert(class_of[c]);
    out.add(static_cast<long long>(points.size()));
  }
  return out;
}

LineMultiset nu_formula(int delta, const Partition& lambda, int r) {
  if (lambda.n() != delta - 1) throw DomainError("nu_formula: partition must sum to delta - 1");
  const long long m = static_cast<long long>(lambda.m());
  if (r < m + 1) throw DomainError("nu_formula: rank must be at least m + 1");
  const long long k = r - (m + 1);
  const auto& parts = lambda.parts();
  LineMultiset nu;
  nu.add(3, k);
  for (int p : parts) {
    nu.add(3 + p);
    nu.add(2 + p, k);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) nu.add(2 + parts[i] + parts[j]);
  }
  return nu;
}

Partition recover_partition(const LineMultiset& nu, int delta, int r) {
  if (delta < 2) throw DomainError("recover_partition: delta must be at least 2");
  auto f = [r](long long x) { return (r - x - 1) + x + (r - x - 1) * x + x * (x - 1) / 2; };
  std::vector<long long> ms;
  for (long long x = 1; x <= r - 2; ++x) {
    if (f(x) == nu.total()) ms.push_back(x);
  }
  if (ms.size() != 1) throw DomainError("not a valid nu: no unique number of parts matches " + nu.to_string());
  const long long m = ms.front();
  const long long k = r - (m + 1);

  std::vector<long long> n(static_cast<std::size_t>(delta), 0);  // n[s] = copies of s in lambda
  auto solve = [&](long long numerator) {
    if (numerator < 0 || numerator % k != 0) throw DomainError("not a valid nu: " + nu.to_string());
    return numerator / k;
  };
  n[1] = solve(nu.count(3)) - 1;
  if (n[1] < 0) throw DomainError("not a valid nu: " + nu.to_string());
  for (int s = 2; s <= delta - 1; ++s) {
    long long z = 0;
    for (int a = 1; 2 * a <= s; ++a) {
      const int b = s - a;
      z += a == b ? n[a] * (n[a] - 1) / 2 : n[a] * n[b];
    }
    n[s] = solve(nu.count(s + 2) - n[s - 1] - z);
  }

  std::vector<int> parts;
  for (int s = delta - 1; s >= 1; --s) parts.insert(parts.end(), static_cast<std::size_t>(n[s]), s);
  if (parts.empty() || static_cast<long long>(parts.size()) != m) {
    throw DomainError("not a valid nu: " + nu.to_string());
  }
  Partition lambda(parts);
  if (lambda.n() != delta - 1 || nu_formula(delta, lambda, r) != nu) {
    throw DomainError("not a valid nu: " + nu.to_string());
  }
  return lambda;
}

DistinguishingReport distinguishing_report(int delta, int r) {
  if (delta < 2) throw DomainError("distinguishing_report: delta must be at least 2");
  if (r <= delta) throw DomainError("distinguishing_report: rank must exceed delta");
  DistinguishingReport rep;
  rep.lee_length_rare = true;
  for (const auto& lambda : partitions(delta - 1)) {
    ExtremalMatrix a = build_A(delta, lambda, r);
    LineMultiset nu = line_length_multiset(a.matrix, a.designated_element);
    if (nu.count(delta + 2) > 1) rep.lee_length_rare = false;
    rep.constructions.emplace_back("A(" + std::to_string(delta) + ";" + lambda.to_string() + ";" + std::to_string(r) + ")",
                                   nu);
  }
  ExtremalMatrix lee = build_A_lee(delta, r);
  LineMultiset lee_nu = line_length_multiset(lee.matrix, lee.designated_element);
  rep.lee_uniform = lee_nu == LineMultiset(std::map<long long, long long>{{delta + 2, r - 1}});
  rep.constructions.emplace_back("A_lee(" + std::to_string(delta) + ";" + std::to_string(r) + ")", lee_nu);

  rep.all_distinct = true;
  for (std::size_t i = 0; i < rep.constructions.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.constructions.size(); ++j) {
      const auto& [li, ni] = rep.constructions[i];
      const auto& [lj, nj] = rep.constructions[j];
      NonIsoCertificate c{li, lj, ni, nj, ni != nj};
      rep.all_distinct = rep.all_distinct && c.distinct;
      rep.certificates.push_back(std::move(c));
    }
  }
  return rep;
}

}  // namespace deltamod
