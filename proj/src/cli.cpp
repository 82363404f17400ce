#include "deltamod/cli.hpp"

#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "deltamod/clique_extensions.hpp"
#include "deltamod/errors.hpp"
#include "deltamod/exact_linalg.hpp"
#include "deltamod/extremal_families.hpp"
#include "deltamod/matrix_io.hpp"
#include "deltamod/matroid_lines.hpp"
#include "deltamod/modularity.hpp"
#include "deltamod/parallel.hpp"
#include "deltamod/search.hpp"
#include "deltamod/suite.hpp"

namespace deltamod::cli {

namespace {

std::string join(const IndexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

std::string bracket(const IntVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out + "]";
}

std::string bracket(const std::vector<IntVector>& rows) {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) out += (i ? "," : "") + bracket(rows[i]);
  return out + "]";
}

Json vector_json(const IntVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(integer_to_json(x));
  return j;
}

Json rows_json(const std::vector<IntVector>& rows) {
  Json j = Json::array();
  for (const auto& r : rows) j.push_back(vector_json(r));
  return j;
}

std::string describe_witness(const SubmatrixWitness& w) {
  return "rows: " + join(w.rows) + "\ncols: " + join(w.cols) + "\ndet: " + to_string(w.det) + "\n";
}

Json nu_json(const LineMultiset& nu) {
  Json counts = Json::object();
  for (auto [len, times] : nu.counts()) counts[std::to_string(len)] = times;
  return Json{{"nu", nu.to_string()}, {"counts", counts}, {"total", nu.total()}};
}

struct Context {
  std::ostream& out;
  bool json = false;

  void emit(const Json& j) const { out << j.dump(2) << '\n'; }
};

SearchMode mode_from_flag(const std::string& s) {
  if (s == "hnf") return SearchMode::kHnfExhaustive;
  if (s == "identity") return SearchMode::kIdentityAnchored;
  if (s == "greedy") return SearchMode::kGreedySeeded;
  return parse_search_mode(s);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for subdeterminant-bounded integer matrices", "deltamod"};
  app.require_subcommand(1);
  int threads = 0;
  bool json = false;
  app.add_option("--threads", threads, "worker threads (0: DELTAMOD_THREADS or all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--json", json, "machine-readable output");

  std::function<int(const Context&)> action;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  // check
  int check_delta = 0;
  std::string check_file;
  auto* check = sub("check", "test whether a matrix is delta-modular");
  check->add_option("--delta", check_delta, "bound")->required()->check(CLI::PositiveNumber);
  check->add_option("file", check_file, "matrix file or -")->required();
  check->callback([&] {
    action = [&](const Context& ctx) {
      IntMatrix m = load_matrix(check_file);
      auto res = is_delta_modular(m, check_delta);
      if (ctx.json) {
        Json j{{"delta", check_delta}, {"holds", res.holds}};
        if (res.violation) j["witness"] = witness_to_json(*res.violation);
        ctx.emit(j);
      } else if (res.holds) {
        ctx.out << "holds: matrix is " << check_delta << "-modular\n";
      } else {
        ctx.out << "violated: |det| = " << abs(res.violation->det) << " > " << check_delta << "\n"
                << describe_witness(*res.violation);
      }
      return res.holds ? kExitOk : kExitViolated;
    };
  });

  // delta
  std::string level_file;
  auto* level = sub("delta", "print the exact modularity level");
  level->add_option("file", level_file, "matrix file or -")->required();
  level->callback([&] {
    action = [&](const Context& ctx) {
      auto rep = modularity_level(load_matrix(level_file));
      if (ctx.json) {
        Json pv = Json::array();
        for (auto [i, j] : rep.parallel_violations) pv.push_back(Json::array({i, j}));
        ctx.emit(Json{{"delta", integer_to_json(rep.delta)},
                      {"witness", witness_to_json(rep.witness)},
                      {"pairwiseNonParallel", rep.pairwise_non_parallel},
                      {"parallelViolations", pv}});
      } else {
        ctx.out << "delta: " << rep.delta << "\n" << describe_witness(rep.witness)
                << "pairwise non-parallel: " << (rep.pairwise_non_parallel ? "yes" : "no") << "\n";
      }
      return kExitOk;
    };
  });

  // construct
  int con_delta = 0, con_rank = 0;
  std::string con_partition;
  bool con_lee = false, con_sporadic = false;
  auto* construct = sub("construct", "write an extremal matrix in the text format");
  construct->add_option("--delta", con_delta, "delta");
  construct->add_option("--rank", con_rank, "rank r");
  construct->add_option("--partition", con_partition, "partition of delta - 1, e.g. \"2\" or \"1,1\"");
  construct->add_flag("--lee", con_lee, "Lee family instead of a partition family");
  construct->add_flag("--sporadic", con_sporadic, "the rank-3 sporadic matrix");
  construct->callback([&] {
    action = [&](const Context& ctx) {
      int chosen = (con_partition.empty() ? 0 : 1) + (con_lee ? 1 : 0) + (con_sporadic ? 1 : 0);
      if (chosen != 1) throw CLI::ValidationError("construct", "give exactly one of --partition, --lee, --sporadic");
      IntMatrix m = con_sporadic ? sporadic_rank3()
                    : con_lee    ? build_A_lee(con_delta, con_rank).matrix
                                 : build_A(con_delta, Partition::parse(con_partition), con_rank).matrix;
      if (ctx.json) {
        ctx.emit(matrix_to_json(m));
      } else {
        write_matrix_text(ctx.out, m);
      }
      return kExitOk;
    };
  });

  // partitions
  int part_n = 0;
  auto* parts = sub("partitions", "list partitions of n in reverse lexicographic order");
  parts->add_option("n", part_n, "n")->required()->check(CLI::PositiveNumber);
  parts->callback([&] {
    action = [&](const Context& ctx) {
      auto ps = partitions(part_n);
      if (ctx.json) {
        Json list = Json::array();
        for (const auto& p : ps) list.push_back(p.to_string());
        ctx.emit(Json{{"n", part_n}, {"count", ps.size()}, {"partitions", list}});
      } else {
        for (const auto& p : ps) ctx.out << p.to_string() << '\n';
      }
      return kExitOk;
    };
  });

  // extensions
  int ext_delta = 0, ext_arity = 1;
  bool ext_no_prefilter = false;
  auto* ext = sub("extensions", "admissible clique extensions");
  ext->add_option("--delta", ext_delta, "delta")->required()->check(CLI::PositiveNumber);
  ext->add_option("--arity", ext_arity, "1, 2 or 3")->check(CLI::Range(1, 3));
  ext->add_flag("--no-prefilter", ext_no_prefilter, "pairs: skip the support pre-filter");
  ext->callback([&] {
    action = [&](const Context& ctx) {
      if (ext_arity == 1) {
        auto cols = enumerate_single_extensions(ext_delta);
        Json list = Json::array();
        for (const auto& c : cols) {
          if (ctx.json) {
            list.push_back(vector_json(c.reduced));
          } else {
            ctx.out << bracket(c.reduced) << '\n';
          }
        }
        if (ctx.json) ctx.emit(Json{{"delta", ext_delta}, {"arity", 1}, {"count", cols.size()}, {"columns", list}});
        return kExitOk;
      }
      if (ext_arity == 2) {
        auto pairs = enumerate_pair_extensions(ext_delta, PairOptions{!ext_no_prefilter});
        Json list = Json::array();
        for (const auto& p : pairs) {
          if (ctx.json) {
            list.push_back(rows_json(p.rows));
          } else {
            ctx.out << bracket(p.rows) << '\n';
          }
        }
        if (ctx.json) ctx.emit(Json{{"delta", ext_delta}, {"arity", 2}, {"count", pairs.size()}, {"pairs", list}});
        return kExitOk;
      }
      auto report = refute_triple_extensions(ext_delta);
      if (ctx.json) {
        Json refuted = Json::array(), survivors = Json::array();
        for (const auto& t : report.refuted) {
          refuted.push_back(Json{{"triple", rows_json(t.triple.rows)},
                                 {"embedding", matrix_to_json(t.embedding)},
                                 {"witness", witness_to_json(t.witness)}});
        }
        for (const auto& s : report.survivors) survivors.push_back(rows_json(s.rows));
        ctx.emit(Json{{"delta", ext_delta}, {"arity", 3}, {"refuted", refuted}, {"survivors", survivors}});
      } else {
        for (const auto& t : report.refuted) {
          ctx.out << bracket(t.triple.rows) << " |det|=" << abs(t.witness.det) << " rows=" << join(t.witness.rows)
                  << " cols=" << join(t.witness.cols) << '\n';
        }
        for (const auto& s : report.survivors) ctx.out << bracket(s.rows) << " survives\n";
        ctx.out << "refuted=" << report.refuted.size() << " survivors=" << report.survivors.size() << '\n';
      }
      return report.survivors.empty() ? kExitOk : kExitViolated;
    };
  });

  // nu
  int nu_delta = 0, nu_rank = 0;
  std::string nu_partition, nu_file;
  std::size_t nu_element = 0;
  auto* nu = sub("nu", "long-line multiset through the designated element");
  nu->add_option("--delta", nu_delta, "delta");
  nu->add_option("--partition", nu_partition, "partition of delta - 1");
  nu->add_option("--rank", nu_rank, "rank r");
  nu->add_option("--from-matrix", nu_file, "compute from a matrix file instead of the closed form");
  nu->add_option("--element", nu_element, "0-based column index for --from-matrix");
  nu->callback([&] {
    action = [&](const Context& ctx) {
      LineMultiset ms;
      if (!nu_file.empty()) {
        ms = line_length_multiset(load_matrix(nu_file), nu_element);
      } else {
        if (nu_partition.empty()) throw CLI::ValidationError("nu", "--partition or --from-matrix is required");
        ms = nu_formula(nu_delta, Partition::parse(nu_partition), nu_rank);
      }
      if (ctx.json) {
        ctx.emit(nu_json(ms));
      } else {
        ctx.out << ms.to_string() << '\n';
      }
      return kExitOk;
    };
  });

  // recover
  int rec_delta = 0, rec_rank = 0;
  std::string rec_nu;
  auto* recover = sub("recover", "recover the partition from a line multiset");
  recover->add_option("--delta", rec_delta, "delta")->required();
  recover->add_option("--rank", rec_rank, "rank r")->required();
  recover->add_option("--nu", rec_nu, "multiset, e.g. \"3:3,4:3\"")->required();
  recover->callback([&] {
    action = [&](const Context& ctx) {
      Partition p = recover_partition(LineMultiset::parse(rec_nu), rec_delta, rec_rank);
      if (ctx.json) {
        ctx.emit(Json{{"partition", p.to_string()}});
      } else {
        ctx.out << p.to_string() << '\n';
      }
      return kExitOk;
    };
  });

  // distinguish
  int dis_delta = 0, dis_rank = 0;
  auto* distinguish = sub("distinguish", "certify pairwise distinct line multisets of the extremal families");
  distinguish->add_option("--delta", dis_delta, "delta")->required();
  distinguish->add_option("--rank", dis_rank, "rank r")->required();
  distinguish->callback([&] {
    action = [&](const Context& ctx) {
      auto rep = distinguishing_report(dis_delta, dis_rank);
      bool ok = rep.all_distinct && rep.lee_uniform && rep.lee_length_rare;
      if (ctx.json) {
        Json cons = Json::array(), certs = Json::array();
        for (const auto& [name, ms] : rep.constructions) cons.push_back(Json{{"id", name}, {"nu", ms.to_string()}});
        for (const auto& c : rep.certificates) {
          certs.push_back(Json{{"left", c.left_id}, {"right", c.right_id}, {"distinct", c.distinct}});
        }
        ctx.emit(Json{{"delta", dis_delta},
                      {"rank", dis_rank},
                      {"constructions", cons},
                      {"certificates", certs},
                      {"leeUniform", rep.lee_uniform},
                      {"leeLengthRare", rep.lee_length_rare},
                      {"allDistinct", rep.all_distinct}});
      } else {
        for (const auto& [name, ms] : rep.constructions) ctx.out << name << ' ' << ms.to_string() << '\n';
        ctx.out << "pairwise distinct: " << (rep.all_distinct ? "yes" : "no") << '\n';
      }
      return ok ? kExitOk : kExitViolated;
    };
  });

  // search
  SearchConfig cfg;
  std::string search_mode = "hnf", seed_file;
  auto* search = sub("search", "branch and bound for the column number");
  search->add_option("--delta", cfg.delta, "delta")->required()->check(CLI::PositiveNumber);
  search->add_option("--rank", cfg.rank, "rank r")->required()->check(CLI::PositiveNumber);
  search->add_option("--mode", search_mode, "hnf, identity or greedy (long names accepted)");
  search->add_option("--node-limit", cfg.node_limit, "node budget")->check(CLI::PositiveNumber);
  search->add_option("--time-limit", cfg.time_limit_seconds, "seconds")->check(CLI::PositiveNumber);
  search->add_option("--seed", seed_file, "seed matrix for greedy mode");
  search->callback([&] {
    action = [&](const Context& ctx) {
      cfg.mode = mode_from_flag(search_mode);
      if (!seed_file.empty()) cfg.seed = load_matrix(seed_file);
      auto cert = max_columns_search(cfg);
      if (ctx.json) {
        ctx.emit(Json{{"bestCount", cert.best_count},
                      {"optimal", cert.optimal},
                      {"exhausted", cert.exhausted},
                      {"scope", cert.scope},
                      {"ceiling", cert.ceiling},
                      {"nodes", cert.nodes},
                      {"matrix", matrix_to_json(cert.best_matrix)}});
      } else {
        ctx.out << "best count: " << cert.best_count << "\noptimal: " << (cert.optimal ? "yes" : "no")
                << "\nscope: " << cert.scope << "\nnodes: " << cert.nodes << "\nceiling: " << cert.ceiling << '\n';
        write_matrix_text(ctx.out, cert.best_matrix);
      }
      return kExitOk;
    };
  });

  // verify-suite
  std::string scope = "fast";
  auto* suite = sub("verify-suite", "run the built-in verification battery");
  suite->add_option("--scope", scope, "fast or full");
  suite->callback([&] {
    action = [&](const Context& ctx) {
      auto report = verify_suite(parse_suite_scope(scope));
      if (ctx.json) {
        ctx.emit(suite_to_json(report));
      } else {
        for (const auto& c : report.checks) {
          ctx.out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ") ["
                  << static_cast<long long>(c.elapsed_ms) << " ms]\n";
        }
      }
      return report.all_passed ? kExitOk : kExitViolated;
    };
  });

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  set_worker_threads(static_cast<std::size_t>(threads));
  try {
    return action(Context{out, json});
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {  // DimensionError, DegenerateRankError, DomainError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MagnitudeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace deltamod::cli
