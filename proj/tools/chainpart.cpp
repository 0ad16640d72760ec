// chainpart: command-line front end for strictly chained (p,q)-ary partitions.
//
// Exit status: 0 on success, 1 on usage or domain errors, 2 when an
// invariant or an acceptance criterion is violated.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainpart/acceptance.hpp"
#include "chainpart/analytics.hpp"
#include "chainpart/codec.hpp"
#include "chainpart/count.hpp"
#include "chainpart/enumerate.hpp"
#include "chainpart/graph23.hpp"
#include "chainpart/serialize.hpp"
#include "chainpart/shortest.hpp"

using namespace chainpart;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  long p = 2;
  long q = 3;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<std::uint64_t> ceiling;
  std::optional<std::uint64_t> memory_budget;

  Limits limits() const {
    Limits l = Limits::from_environment();
    if (ceiling) l.enumeration_ceiling = *ceiling;
    if (memory_budget) l.memory_budget = *memory_budget;
    return l;
  }
};

/// Thrown to leave with status 2 after the output has been written.
struct Violation {
  std::string what;
};

std::string fixed(double x, int digits = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void print_partition(const Partition& pt, const PQSystem& sys, const std::string& format, bool with_values) {
  if (format == "json") {
    std::cout << to_json(pt, sys, with_values) << '\n';
  } else if (format == "csv") {
    std::cout << to_decimal(value(pt, sys)) << ',' << pt.size() << ',' << to_sum_string(pt, sys) << '\n';
  } else {
    std::cout << lattice_encode(pt) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strictly chained (p,q)-ary partitions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  RunConfig cfg;
  app.add_option("--p", cfg.p, "first base")->capture_default_str();
  app.add_option("--q", cfg.q, "second base")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads for selftest")->capture_default_str();
  app.add_option("--ceiling", cfg.ceiling, "enumeration ceiling (default from CHAINPART_CEILING or 1e7)");
  app.add_option("--memory-budget", cfg.memory_budget, "maximum partitions held by an enumeration memo");

  std::string u_text = "0";
  std::string format = "json";
  std::string emit = "csv";
  std::uint64_t limit = 1000;

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "list Omega(U), one partition per line");
  bool with_values = false;
  enumerate_cmd->add_option("--u", u_text)->required();
  enumerate_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "words"}));
  enumerate_cmd->add_flag("--values", with_values, "include part values in JSON output");

  // encode / decode
  std::string kind = "lattice";
  auto* encode_cmd = app.add_subcommand("encode", "JSON partitions on stdin to words on stdout");
  encode_cmd->add_option("--kind", kind)->check(CLI::IsMember({"tree", "lattice"}));
  auto* decode_cmd = app.add_subcommand("decode", "words on stdin to JSON partitions on stdout");
  decode_cmd->add_option("--kind", kind)->check(CLI::IsMember({"tree", "lattice"}));

  // count
  std::string method = "general";
  auto* count_cmd = app.add_subcommand("count", "W(U)");
  count_cmd->add_option("--u", u_text)->required();
  count_cmd->add_option("--method", method)->check(CLI::IsMember({"general", "p2", "theorem2", "all"}));

  // scan
  std::string scan_kind = "counts";
  auto* scan_cmd = app.add_subcommand("scan", "scans over [0, limit]");
  scan_cmd->add_option("kind", scan_kind)->check(CLI::IsMember({"counts", "maxw", "theorem4", "smallw", "bound"}));
  scan_cmd->add_option("--limit", limit)->required();
  scan_cmd->add_option("--emit", emit)->check(CLI::IsMember({"csv", "json"}));

  // shortest
  bool witness = false;
  auto* sigma_cmd = app.add_subcommand("sigma", "fewest parts over Omega(U)");
  sigma_cmd->add_option("--u", u_text)->required();
  sigma_cmd->add_flag("--witness", witness, "print a shortest partition as JSON");
  auto* stats_cmd = app.add_subcommand("sigma-stats", "mean of sigma(U)/log2(U) and the histogram of sigma");
  stats_cmd->add_option("--limit", limit)->required();
  stats_cmd->add_option("--emit", emit)->check(CLI::IsMember({"csv", "json"}));
  std::string g_text, mod_text;
  auto* pow_cmd = app.add_subcommand("chainpow", "g^U mod m along a shortest chain");
  pow_cmd->add_option("--g", g_text)->required();
  pow_cmd->add_option("--u", u_text)->required();
  pow_cmd->add_option("--mod", mod_text)->required();

  // graph23
  bool dot = false;
  auto* graph_cmd = app.add_subcommand("graph", "transition graph G(U) for (2,3)");
  graph_cmd->add_option("--u", u_text)->required();
  graph_cmd->add_flag("--dot", dot, "emit Graphviz DOT");
  std::uint64_t steps = 100;
  auto* walk_cmd = app.add_subcommand("walk", "lazy random walk on G(U) from the binary partition");
  walk_cmd->add_option("--u", u_text)->required();
  walk_cmd->add_option("--steps", steps);

  // analytics
  auto* alpha_cmd = app.add_subcommand("alpha", "growth exponents alpha, beta and the bound on C");
  std::uint64_t xmax = 1'000'000;
  auto* sumfn_cmd = app.add_subcommand("sumfn", "S(x)/x^alpha at x = 2^k");
  sumfn_cmd->add_option("--xmax", xmax);
  sumfn_cmd->add_option("--emit", emit)->check(CLI::IsMember({"csv", "json"}));

  // sampling
  std::uint64_t draws = 1;
  auto* sample_cmd = app.add_subcommand("sample", "uniform draws from Omega(U)");
  sample_cmd->add_option("--u", u_text)->required();
  sample_cmd->add_option("--count", draws);

  // selftest
  bool quick = false, full = false, corrupt = false;
  std::string report_format = "json";
  std::optional<int> criterion;
  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
  auto* quick_flag = selftest_cmd->add_flag("--quick", quick, "reduced scale");
  selftest_cmd->add_flag("--full", full, "full scale (default)")->excludes(quick_flag);
  selftest_cmd->add_option("--criterion", criterion)->check(CLI::Range(1, kCriterionCount));
  selftest_cmd->add_flag("--corrupt-memo", corrupt, "test hook: plant a wrong count")->group("");
  selftest_cmd->add_option("--emit", report_format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const PQSystem sys = make_system(cfg.p, cfg.q);
    const Limits limits = cfg.limits();

    if (*enumerate_cmd) {
      const Nat U = parse_nat(u_text);
      if (format == "csv") std::cout << "sum,size,parts\n";
      for (const Partition& pt : enumerate_decomposed(U, sys, limits).members) print_partition(pt, sys, format, with_values);
    } else if (*encode_cmd) {
      for (std::string line; std::getline(std::cin, line);) {
        if (line.empty()) continue;
        const Partition pt = partition_from_json(line, sys);
        std::cout << (kind == "tree" ? format_tree_word(tree_encode(pt, sys), sys) : lattice_encode(pt)) << '\n';
      }
    } else if (*decode_cmd) {
      for (std::string line; std::getline(std::cin, line);) {
        if (line.empty() && kind == "lattice") continue;
        const Partition pt =
            kind == "tree" ? tree_decode(parse_tree_word(line, sys), sys).partition : lattice_decode(line);
        std::cout << to_json(pt, sys) << '\n';
      }
    } else if (*count_cmd) {
      const Nat U = parse_nat(u_text);
      if (method != "all") {
        std::cout << to_decimal(make_counter(parse_count_method(method), sys)->count(U)) << '\n';
      } else {
        std::optional<Nat> first;
        bool agree = true;
        for (CountMethod m : {CountMethod::General, CountMethod::P2, CountMethod::DigitSum}) {
          if (m == CountMethod::P2 && sys.p() != 2) continue;
          const Nat w = make_counter(m, sys)->count(U);
          std::cout << to_string(m) << ' ' << to_decimal(w) << '\n';
          if (first && *first != w) agree = false;
          first = w;
        }
        if (!agree) throw Violation{"counting engines disagree"};
      }
    } else if (*scan_cmd) {
      const bool csv = emit == "csv";
      if (scan_kind == "counts") {
        const auto counts = count_range(limit, sys);
        if (csv) std::cout << "U,W\n";
        for (std::uint64_t u = 0; u <= limit; ++u) {
          if (csv) {
            std::cout << u << ',' << to_decimal(counts[u]) << '\n';
          } else {
            std::cout << json{{"U", u}, {"W", to_decimal(counts[u])}}.dump() << '\n';
          }
        }
      } else if (scan_kind == "maxw") {
        const MaxWReport report = maxw_scan(limit, sys);
        if (csv) std::cout << "x,max_W,class\n";
        for (const JumpRecord& j : report.jumps) {
          const char* cls = j.odd_multiple_of_q ? "q_odd" : "2q2_multiple";
          if (csv) {
            std::cout << j.x << ',' << to_decimal(j.value) << ',' << cls << '\n';
          } else {
            std::cout << json{{"x", j.x}, {"max_W", to_decimal(j.value)}, {"class", cls}}.dump() << '\n';
          }
        }
        std::cerr << report.conjecture_exceptions.size() << " jumps outside q(2N+1)\n";
      } else if (scan_kind == "theorem4") {
        const auto violations = monotonicity_check(limit, sys);
        if (csv) std::cout << "at,relation,lhs,rhs\n";
        for (const auto& v : violations) {
          if (csv) {
            std::cout << v.at << ",\"" << v.relation << "\"," << to_decimal(v.lhs) << ',' << to_decimal(v.rhs) << '\n';
          } else {
            std::cout << json{{"at", v.at}, {"relation", v.relation}, {"lhs", to_decimal(v.lhs)},
                              {"rhs", to_decimal(v.rhs)}}.dump()
                      << '\n';
          }
        }
        if (!violations.empty()) throw Violation{"monotonicity violated"};
      } else if (scan_kind == "smallw") {
        if (sys != make_system(2, 3)) throw DomainError("the small-W scan is defined for (2,3)");
        const auto counts = count_range(limit, sys);
        const SmallWReport report = characterize_small_W(counts);
        std::vector<std::pair<std::uint64_t, int>> rows;
        for (auto u : report.ones) rows.emplace_back(u, 1);
        for (auto u : report.twos) rows.emplace_back(u, 2);
        std::sort(rows.begin(), rows.end());
        if (csv) std::cout << "U,W\n";
        for (auto [u, w] : rows) {
          if (csv) {
            std::cout << u << ',' << w << '\n';
          } else {
            std::cout << json{{"U", u}, {"W", std::to_string(w)}}.dump() << '\n';
          }
        }
      } else {
        const double beta = solve_beta(sys);
        const auto bad = majorant_violation(count_range(limit, sys), beta);
        if (csv) {
          std::cout << "beta,limit,first_violation\n"
                    << fixed(beta) << ',' << limit << ',' << (bad ? std::to_string(*bad) : "") << '\n';
        } else {
          json j{{"beta", beta}, {"limit", limit}, {"first_violation", nullptr}};
          if (bad) j["first_violation"] = *bad;
          std::cout << j.dump() << '\n';
        }
        if (bad) throw Violation{"W(U) exceeds U^beta"};
      }
    } else if (*sigma_cmd) {
      const SigmaResult r = sigma(parse_nat(u_text), sys);
      if (!witness) {
        std::cout << r.sigma << '\n';
      } else {
        const ChainCost c = chain_cost(r.witness);
        json j{{"U", to_decimal(r.U)},
               {"sigma", r.sigma},
               {"witness", json::parse(to_json(r.witness, sys))},
               {"cost", {{"p_ops", c.p_ops}, {"q_ops", c.q_ops}, {"adds", c.adds}}}};
        std::cout << j.dump() << '\n';
      }
    } else if (*stats_cmd) {
      const SigmaStats s = sigma_stats(limit, sys);
      if (emit == "csv") {
        std::cout << "sigma,count\n";
        for (auto [k, n] : s.histogram) std::cout << k << ',' << n << '\n';
        std::cerr << "mean sigma/log2(U) = " << fixed(s.mean_ratio) << ", times 4 = " << fixed(s.mean_scaled) << '\n';
      } else {
        json hist = json::object();
        for (auto [k, n] : s.histogram) hist[std::to_string(k)] = n;
        std::cout << json{{"limit", limit},     {"samples", s.samples}, {"mean_ratio", s.mean_ratio},
                          {"mean_scaled", s.mean_scaled}, {"histogram", hist}}.dump()
                  << '\n';
      }
    } else if (*pow_cmd) {
      std::cout << to_decimal(chain_pow(parse_nat(g_text), parse_nat(u_text), parse_nat(mod_text), sys)) << '\n';
    } else if (*graph_cmd) {
      const TransitionGraph g = build_graph(parse_nat(u_text), sys, limits);
      if (dot) {
        std::cout << to_dot(g);
      } else {
        const Connectivity c = connectivity_check(g);
        std::cout << json{{"U", to_decimal(g.U)},
                          {"vertices", c.vertices},
                          {"edges", c.edges},
                          {"connected", c.connected},
                          {"diameter", c.diameter}}.dump()
                  << '\n';
      }
    } else if (*walk_cmd) {
      std::cout << to_json(random_walk(parse_nat(u_text), steps, cfg.seed, sys), sys) << '\n';
    } else if (*alpha_cmd) {
      const ExponentPairRoots r = solve_exponents(sys);
      std::cout << json{{"p", sys.p()},
                        {"q", sys.q()},
                        {"alpha", r.alpha},
                        {"alpha_residual", r.alpha_residual},
                        {"beta", r.beta},
                        {"beta_residual", r.beta_residual},
                        {"C_upper", c_upper_bound(sys, r.alpha)}}.dump()
                << '\n';
    } else if (*sumfn_cmd) {
      const CEstimate est = estimate_C(sys, xmax);
      if (emit == "csv") std::cout << "x,S(x),S(x)/x^alpha,C_upper\n";
      for (const DyadicSample& s : est.samples) {
        if (emit == "csv") {
          std::cout << s.x << ',' << to_decimal(s.S) << ',' << fixed(s.ratio) << ',' << fixed(est.upper_bound) << '\n';
        } else {
          std::cout << json{{"x", s.x}, {"S", to_decimal(s.S)}, {"ratio", s.ratio}, {"C_upper", est.upper_bound}}.dump()
                    << '\n';
        }
      }
      if (est.bound_violated) throw Violation{"a ratio exceeds the upper bound on C"};
    } else if (*sample_cmd) {
      const Nat U = parse_nat(u_text);
      UniformSampler sampler(sys, cfg.seed);
      for (std::uint64_t i = 0; i < draws; ++i) std::cout << to_json(sampler.draw(U), sys) << '\n';
    } else if (*selftest_cmd) {
      AcceptanceOptions opts;
      opts.profile = quick ? Profile::Quick : Profile::Full;
      opts.threads = cfg.threads;
      opts.only = criterion;
      opts.corrupt_memo = corrupt;
      bool ok = true;
      for (const CriterionResult& r : run_acceptance(opts)) {
        std::cout << (report_format == "text" ? format_text(r) : format_json(r)) << std::endl;
        ok = ok && r.pass;
      }
      if (!ok) throw Violation{"acceptance criteria failed"};
    }
  } catch (const Violation& v) {
    std::cout.flush();
    std::cerr << "chainpart: " << v.what << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cout.flush();
    std::cerr << "chainpart: invariant violated: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "chainpart: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
