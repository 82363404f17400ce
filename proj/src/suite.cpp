#include "deltamod/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>

#include "deltamod/clique_extensions.hpp"
#include "deltamod/errors.hpp"
#include "deltamod/exact_linalg.hpp"
#include "deltamod/extremal_families.hpp"
#include "deltamod/matroid_lines.hpp"
#include "deltamod/modularity.hpp"
#include "deltamod/search.hpp"

namespace deltamod {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string id(int delta, const Partition& lambda, int r) {
  return "A(" + std::to_string(delta) + ";" + lambda.to_string() + ";" + std::to_string(r) + ")";
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Outcome sporadic() {
  IntMatrix s = sporadic_rank3();
  auto rep = modularity_level(s);
  bool ok = s.cols() == 11 && rank(s) == 3 && rep.delta == 3 && rep.pairwise_non_parallel &&
            static_cast<long long>(s.cols()) > expected_count(3, 3);
  return {ok, "columns=" + std::to_string(s.cols()) + " level=" + to_string(rep.delta)};
}

Outcome families(int max_delta, int max_r) {
  long long checked = 0;
  for (int delta = 2; delta <= max_delta; ++delta) {
    for (const auto& lambda : partitions(delta - 1)) {
      for (int r = static_cast<int>(lambda.m()) + 1; r <= max_r; ++r) {
        IntMatrix a = build_A(delta, lambda, r).matrix;
        if (static_cast<long long>(a.cols()) != expected_count(delta, r) || !verify_is_feasible(a, delta)) {
          return {false, "failed at " + id(delta, lambda, r)};
        }
        ++checked;
      }
    }
  }
  for (int delta = 1; delta <= max_delta; ++delta) {
    for (int r = 2; r <= max_r; ++r) {
      IntMatrix a = build_A_lee(delta, r).matrix;
      if (static_cast<long long>(a.cols()) != expected_count(delta, r) || !verify_is_feasible(a, delta)) {
        return {false, "failed at A_lee(" + std::to_string(delta) + ";" + std::to_string(r) + ")"};
      }
      ++checked;
    }
  }
  return {true, "matrices=" + std::to_string(checked)};
}

Outcome gamma_formula(int max_r, int random_trials) {
  long long checked = 0;
  auto agrees = [&](const IntVector& a, int r) {
    IntMatrix m = clique_matrix(static_cast<std::size_t>(r) + 1).append_column(a);
    ++checked;
    return clique_extension_max_subdet(a, r) == max_abs_full_rank_subdet(m).value;
  };
  for (int r = 1; r <= max_r; ++r) {
    IntVector cur;
    bool ok = true;
    std::function<void(int, long long)> rec = [&](int top, long long sum) {
      if (!ok) return;
      if (cur.size() == static_cast<std::size_t>(r) + 1) {
        if (sum == 0 && !is_zero(cur)) ok = agrees(cur, r);
        return;
      }
      for (int v = top; v >= -4; --v) {
        cur.emplace_back(v);
        rec(v, sum + v);
        cur.pop_back();
      }
    };
    rec(4, 0);
    if (!ok) return {false, "sorted vector mismatch at r=" + std::to_string(r)};
  }
  std::mt19937 rng(2024);
  for (int t = 0; t < random_trials; ++t) {
    int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_r));
    IntVector a(static_cast<std::size_t>(r) + 1);
    Integer s = 0;
    for (int i = 0; i < r; ++i) {
      a[static_cast<std::size_t>(i)] = static_cast<long long>(rng() % 9) - 4;
      s += a[static_cast<std::size_t>(i)];
    }
    a[static_cast<std::size_t>(r)] = -s;
    if (is_zero(a)) continue;
    if (!agrees(a, r)) return {false, "random vector mismatch"};
  }
  return {true, "columns=" + std::to_string(checked)};
}

Outcome single_extensions() {
  const std::vector<IntVector> shown{make_vector({-3, 2, 1}),     make_vector({-2, 1, 1}),
                                     make_vector({-3, 1, 1, 1}),  make_vector({-2, 2, -1, 1}),
                                     make_vector({-1, -1, 1, 1}), make_vector({-2, -1, 1, 1, 1}),
                                     make_vector({-1, -1, -1, 1, 1, 1})};
  std::set<CanonicalColumn> want;
  for (const auto& v : shown) want.insert(canonical_column(v));
  auto got = enumerate_single_extensions(3);
  bool ok = got.size() == 7 && std::set<CanonicalColumn>(got.begin(), got.end()) == want;
  return {ok, "columns=" + std::to_string(got.size())};
}

Outcome pair_extensions() {
  const std::vector<IntMatrix> shown{IntMatrix{{-3, -2}, {2, 1}},
                                     IntMatrix{{-2, 1}, {1, -2}},
                                     IntMatrix{{-2, 1}, {1, -1}, {0, -1}},
                                     IntMatrix{{-2, -1}, {1, 1}, {0, -1}},
                                     IntMatrix{{-2, -1}, {2, 1}, {-1, -1}},
                                     IntMatrix{{-1, -1}, {-1, 1}, {1, -1}},
                                     IntMatrix{{-1, -1}, {1, 1}, {-1, 0}, {0, -1}},
                                     IntMatrix{{-1, 1}, {1, -1}, {-1, 0}, {0, -1}}};
  std::set<CanonicalBlock> want;
  for (const auto& m : shown) want.insert(canonical_block(m));
  auto got = enumerate_pair_extensions(3);
  bool ok = got.size() == 8 && std::set<CanonicalBlock>(got.begin(), got.end()) == want;
  return {ok, "pairs=" + std::to_string(got.size())};
}

Outcome triple_extensions() {
  auto report = refute_triple_extensions(3);
  bool ok = report.survivors.empty() && !report.refuted.empty();
  for (const auto& t : report.refuted) {
    IntMatrix full = clique_extension_matrix(t.embedding);
    ok = ok && abs(t.witness.det) >= 4 && det(full.submatrix(t.witness.rows, t.witness.cols)) == t.witness.det;
  }
  return {ok, "refuted=" + std::to_string(report.refuted.size()) +
                  " survivors=" + std::to_string(report.survivors.size())};
}

Outcome nu_consistency(int max_delta, int max_r) {
  long long checked = 0;
  for (int delta = 2; delta <= max_delta; ++delta) {
    for (const auto& lambda : partitions(delta - 1)) {
      for (int r = std::max(static_cast<int>(lambda.m()) + 1, delta + 1); r <= max_r; ++r) {
        auto a = build_A(delta, lambda, r);
        if (line_length_multiset(a.matrix, a.designated_element) != nu_formula(delta, lambda, r)) {
          return {false, "mismatch at " + id(delta, lambda, r)};
        }
        ++checked;
      }
    }
    for (int r = delta + 1; r <= max_r; ++r) {
      auto lee = build_A_lee(delta, r);
      LineMultiset want;
      want.add(delta + 2, r - 1);
      if (line_length_multiset(lee.matrix, lee.designated_element) != want) {
        return {false, "mismatch at A_lee(" + std::to_string(delta) + ";" + std::to_string(r) + ")"};
      }
      ++checked;
    }
  }
  return {true, "matrices=" + std::to_string(checked)};
}

Outcome recovery(int max_delta) {
  long long checked = 0;
  for (int delta = 2; delta <= max_delta; ++delta) {
    for (int r = delta + 1; r <= delta + 3; ++r) {
      for (const auto& lambda : partitions(delta - 1)) {
        if (recover_partition(nu_formula(delta, lambda, r), delta, r) != lambda) {
          return {false, "round trip failed at " + id(delta, lambda, r)};
        }
        ++checked;
      }
    }
  }
  return {true, "cases=" + std::to_string(checked)};
}

Outcome distinguishing() {
  std::string detail;
  bool ok = true;
  for (auto [delta, r] : {std::pair{2, 3}, {3, 4}, {4, 5}, {5, 6}}) {
    auto rep = distinguishing_report(delta, r);
    ok = ok && rep.all_distinct && rep.lee_uniform && rep.lee_length_rare &&
         static_cast<long long>(rep.constructions.size()) == partition_count(delta - 1) + 1;
    if (!detail.empty()) detail += ' ';
    detail += std::to_string(delta) + ":" + std::to_string(rep.constructions.size());
  }
  return {ok, "distinct=" + detail};
}

Outcome search_values() {
  std::string detail;
  bool ok = true;
  for (auto [delta, r, want] : {std::tuple{1, 2, 3}, {1, 3, 6}, {2, 3, 9}}) {
    SearchConfig c;
    c.delta = delta;
    c.rank = r;
    c.mode = SearchMode::kHnfExhaustive;
    auto cert = max_columns_search(c);
    ok = ok && cert.optimal && cert.best_count == want;
    detail += "s(" + std::to_string(delta) + "," + std::to_string(r) + ")=" + std::to_string(cert.best_count) + " ";
  }
  SearchConfig g;
  g.delta = 3;
  g.rank = 3;
  g.mode = SearchMode::kGreedySeeded;
  g.seed = sporadic_rank3();
  auto cert = max_columns_search(g);
  ok = ok && cert.best_count >= 11;
  detail += "seeded(3,3)=" + std::to_string(cert.best_count);
  return {ok, detail};
}

}  // namespace

SuiteScope parse_suite_scope(const std::string& text) {
  if (text == "fast") return SuiteScope::kFast;
  if (text == "full") return SuiteScope::kFull;
  throw ParseError("unknown suite scope '" + text + "'");
}

VerifySuiteReport verify_suite(SuiteScope scope) {
  const bool full = scope == SuiteScope::kFull;
  std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"sporadic matrix: 11 columns, rank 3, level 3", sporadic},
      {full ? "extremal families: counts and modularity, delta <= 5, r <= 7"
            : "extremal families: counts and modularity, delta <= 3, r <= 6",
       [full] { return full ? families(5, 7) : families(3, 6); }},
      {full ? "clique extension formula vs brute force, r <= 6, 1000 random"
            : "clique extension formula vs brute force, r <= 4, 200 random",
       [full] { return full ? gamma_formula(6, 1000) : gamma_formula(4, 200); }},
      {"single extensions, delta 3: 7 canonical columns", single_extensions},
      {"pair extensions, delta 3: 8 canonical pairs", pair_extensions},
      {"triple extensions, delta 3: every candidate refuted", triple_extensions},
      {full ? "line multisets vs closed form, delta <= 5, r <= 7" : "line multisets vs closed form, delta <= 4, r <= 6",
       [full] { return full ? nu_consistency(5, 7) : nu_consistency(4, 6); }},
      {"partition recovery round trip, delta <= 8", [] { return recovery(8); }},
      {"distinguishing reports, (2,3) (3,4) (4,5) (5,6)", distinguishing},
      {"column number search: s(1,2)=3, s(1,3)=6, s(2,3)=9, seeded s(3,3) >= 11", search_values},
  };
  VerifySuiteReport report;
  report.all_passed = true;
  for (const auto& [name, fn] : checks) {
    SuiteCheck check{name, false, 0, ""};
    auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = fn();
      check.passed = o.passed;
      check.detail = o.detail;
    } catch (const std::exception& e) {
      check.detail = std::string("exception: ") + e.what();
    }
    check.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.all_passed = report.all_passed && check.passed;
    report.checks.push_back(std::move(check));
  }
  return report;
}

Json suite_to_json(const VerifySuiteReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(Json{{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"detail", c.detail}});
  }
  return Json{{"checks", std::move(checks)}, {"allPassed", report.all_passed}};
}

}  // namespace deltamod
