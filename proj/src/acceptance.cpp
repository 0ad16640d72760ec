#include "chainpart/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chainpart/analytics.hpp"
#include "chainpart/codec.hpp"
#include "chainpart/count.hpp"
#include "chainpart/enumerate.hpp"
#include "chainpart/graph23.hpp"
#include "chainpart/shortest.hpp"

namespace chainpart {

namespace {

/// A check reports an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

std::string run_parallel(const std::vector<Check>& checks, unsigned threads) {
  std::vector<std::string> failures(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < checks.size();) {
      try {
        failures[i] = checks[i]();
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::string out;
  for (const auto& f : failures) {
    if (f.empty()) continue;
    if (!out.empty()) out += "; ";
    out += f;
  }
  return out;
}

template <class T>
std::string join(const T& items) {
  std::ostringstream os;
  bool first = true;
  for (const auto& x : items) {
    os << (first ? "" : ",") << x;
    first = false;
  }
  return os.str();
}

struct Outcome {
  bool pass;
  std::string detail;
};

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& opts) : opts_(opts), s23_(make_system(2, 3)) {}

  bool full() const { return opts_.profile == Profile::Full; }
  std::uint64_t pick(std::uint64_t quick, std::uint64_t full_scale) const { return full() ? full_scale : quick; }

  /// W(0..limit) for (2,3), shared across criteria. Built through a counter
  /// so the corruption hook lands in the same table everything reads.
  const std::vector<Nat>& table23(std::uint64_t limit) {
    if (table23_.size() <= limit) {
      GeneralCounter counter(s23_);
      if (opts_.corrupt_memo) counter.table().inject_for_testing(Nat(19), Nat(5));
      table23_.clear();
      table23_.reserve(limit + 1);
      for (std::uint64_t u = 0; u <= limit; ++u) table23_.push_back(counter.count(u));
    }
    return table23_;
  }

  Outcome run(int id);

 private:
  Outcome omega19();
  Outcome omega27();
  Outcome engines();
  Outcome small_w();
  Outcome monotone();
  Outcome maxw();
  Outcome shortest();
  Outcome majorant();
  Outcome roots();
  Outcome partial_sums();
  Outcome graph();
  Outcome sampler();
  Outcome codec();
  Outcome powers_of_two_base3();

  AcceptanceOptions opts_;
  PQSystem s23_;
  std::vector<Nat> table23_;
};

const char* const kTitles[kCriterionCount] = {
    "omega(19) words",       "omega(27) and G(27)", "counting engines",   "W = 1 and W = 2 forms",
    "monotonicity",          "max-W jumps",         "shortest partitions", "W(U) <= U^beta",
    "alpha and beta roots",  "partial sums",        "transition graph",   "uniform sampler",
    "word codecs",           "powers of 2 in base 3",
};

Outcome Suite::run(int id) {
  switch (id) {
    case 1: return omega19();
    case 2: return omega27();
    case 3: return engines();
    case 4: return small_w();
    case 5: return monotone();
    case 6: return maxw();
    case 7: return shortest();
    case 8: return majorant();
    case 9: return roots();
    case 10: return partial_sums();
    case 11: return graph();
    case 12: return sampler();
    case 13: return codec();
    case 14: return powers_of_two_base3();
  }
  throw DomainError("no criterion " + std::to_string(id));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome Suite::omega19() {
  const auto t0 = std::chrono::steady_clock::now();
  const OmegaSet omega = enumerate_decomposed(Nat(19), s23_);
  std::set<std::string> tree, lattice;
  for (const Partition& m : omega.members) {
    tree.insert(format_tree_word(tree_encode(m, s23_), s23_));
    lattice.insert(lattice_encode(m));
  }
  const Nat W = table23(19)[19];
  const double dt = seconds_since(t0);
  const std::set<std::string> want_tree{"1112222", "1112213", "1332", "131122"};
  const std::set<std::string> want_lattice{"3203", "3013", "1133", "11003"};
  const bool ok = omega.members.size() == 4 && W == 4 && tree == want_tree && lattice == want_lattice && dt < 1;
  return {ok, "|omega| = " + std::to_string(omega.members.size()) + ", W = " + to_decimal(W) + ", tree {" +
                  join(tree) + "}, lattice {" + join(lattice) + "}"};
}

Outcome Suite::omega27() {
  const auto t0 = std::chrono::steady_clock::now();
  const OmegaSet omega = enumerate_decomposed(Nat(27), s23_);
  std::set<std::string> lattice;
  for (const Partition& m : omega.members) lattice.insert(lattice_encode(m));
  const Connectivity c = connectivity_check(Nat(27), s23_);
  const double dt = seconds_since(t0);
  const std::set<std::string> want{"11013", "13003", "1333", "21003", "2133", "2213", "2223"};
  const bool ok = omega.members.size() == 7 && lattice == want && c.connected && c.vertices == 7 && dt < 1;
  return {ok, "lattice {" + join(lattice) + "}, G(27) " + (c.connected ? "connected" : "disconnected") +
                  " with diameter " + std::to_string(c.diameter)};
}

Outcome Suite::engines() {
  const std::uint64_t oracle_limit = pick(2000, 10'000);
  const std::uint64_t engine_limit = pick(100'000, 1'000'000);
  std::vector<Check> checks;
  std::vector<std::vector<Nat>> tables;
  const std::vector<PQSystem> systems{s23_, make_system(2, 5)};
  for (const PQSystem& sys : systems) {
    tables.push_back(sys == s23_ ? table23(engine_limit) : count_range(engine_limit, sys));
  }
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const PQSystem sys = systems[i];
    const std::vector<Nat>& table = tables[i];
    const std::string tag = "(" + std::to_string(sys.p()) + "," + std::to_string(sys.q()) + ")";
    checks.push_back([=, &table]() -> std::string {
      for (std::uint64_t u = 0; u <= oracle_limit; ++u) {
        const std::size_t n = brute_force_enumerate(from_u64(u), sys).size();
        if (table[u] != n) return tag + " general W(" + std::to_string(u) + ") = " + to_decimal(table[u]) +
                                  " but brute force finds " + std::to_string(n);
      }
      return {};
    });
    for (CountMethod m : {CountMethod::P2, CountMethod::DigitSum}) {
      checks.push_back([=, &table]() -> std::string {
        auto counter = make_counter(m, sys);
        for (std::uint64_t u = 0; u <= engine_limit; ++u) {
          const Nat w = counter->count(u);
          if (w != table[u]) return tag + " " + to_string(m) + " W(" + std::to_string(u) + ") = " + to_decimal(w) +
                                    " but general gives " + to_decimal(table[u]);
        }
        return {};
      });
    }
  }
  const std::string failure = run_parallel(checks, opts_.threads);
  if (!failure.empty()) return {false, failure};
  return {true, "oracle agreement to " + std::to_string(oracle_limit) + ", engine agreement to " +
                    std::to_string(engine_limit) + " for (2,3) and (2,5)"};
}

Outcome Suite::small_w() {
  const std::uint64_t limit = pick(10'000, 100'000);
  const std::vector<Nat>& table = table23(limit);
  const std::vector<Nat> counts(table.begin(), table.begin() + limit + 1);
  SmallWReport report;
  try {
    report = characterize_small_W(counts);
  } catch (const InvariantViolation& e) {
    return {false, e.what()};
  }
  std::vector<std::uint64_t> ones100, twos40;
  std::copy_if(report.ones.begin(), report.ones.end(), std::back_inserter(ones100), [](auto u) { return u <= 100; });
  std::copy_if(report.twos.begin(), report.twos.end(), std::back_inserter(twos40), [](auto u) { return u <= 40; });
  const bool ok = ones100 == std::vector<std::uint64_t>{0, 1, 2, 5, 11, 23, 47, 95} &&
                  twos40 == std::vector<std::uint64_t>{3, 4, 6, 7, 8, 14, 17, 29, 35};
  return {ok, std::to_string(report.ones.size()) + " with W = 1, " + std::to_string(report.twos.size()) +
                  " with W = 2 up to " + std::to_string(limit) + "; W=1 below 100: {" + join(ones100) + "}"};
}

Outcome Suite::monotone() {
  const std::uint64_t limit = pick(100'000, 1'000'000);
  const std::vector<unsigned long> qs{3, 5, 7, 9, 11, 13, 15};
  std::vector<Check> checks;
  for (unsigned long q : qs) {
    checks.push_back([=]() -> std::string {
      const auto v = monotonicity_check(limit, make_system(2, static_cast<long>(q)));
      if (v.empty()) return {};
      return "q = " + std::to_string(q) + ": " + v.front().relation + " fails at " + std::to_string(v.front().at);
    });
  }
  const std::string failure = run_parallel(checks, opts_.threads);
  if (!failure.empty()) return {false, failure};
  return {true, "no violations up to " + std::to_string(limit) + " for q in {" + join(qs) + "}"};
}

Outcome Suite::maxw() {
  const std::uint64_t limit = pick(100'000, 1'000'000);
  const MaxWReport report = maxw_scan(table23(limit), s23_);
  const std::vector<std::uint64_t> want_x{3, 9, 21, 27, 57, 81, 165, 171, 243, 333, 345};
  const std::vector<unsigned> want_v{2, 4, 5, 7, 10, 13, 17, 19, 21, 22, 25};
  bool ok = report.jumps.size() >= want_x.size() && report.conjecture_exceptions.empty();
  for (std::size_t i = 0; ok && i < want_x.size(); ++i) {
    ok = report.jumps[i].x == want_x[i] && report.jumps[i].value == want_v[i];
  }
  std::vector<std::string> head;
  for (std::size_t i = 0; i < std::min<std::size_t>(11, report.jumps.size()); ++i) {
    head.push_back(to_decimal(report.jumps[i].value) + "@" + std::to_string(report.jumps[i].x));
  }
  return {ok, std::to_string(report.jumps.size()) + " jumps to " + std::to_string(limit) + ", first " + join(head) +
                  ", " + std::to_string(report.conjecture_exceptions.size()) + " even jumps"};
}

Outcome Suite::shortest() {
  std::vector<std::string> problems;
  ShortestSolver solver(s23_);
  const SigmaResult s19 = solver.solve(Nat(19));
  if (s19.sigma != 2 || s19.witness != Partition::from_chain({{1, 2}, {0, 0}})) problems.push_back("sigma(19)");
  for (unsigned a = 0; a <= 20; ++a) {
    const Nat base = power(2, a) * 3;
    if (solver.length(base - 1) != a + 1) problems.push_back("sigma(2^" + std::to_string(a) + "*3-1)");
    if (solver.length(base) != 1u) problems.push_back("sigma(2^" + std::to_string(a) + "*3)");
  }
  const std::uint64_t oracle_limit = pick(2000, 10'000);
  for (std::uint64_t u = 1; u <= oracle_limit && problems.size() < 5; ++u) {
    std::size_t best = SIZE_MAX;
    for (const Partition& pt : brute_force_enumerate(from_u64(u), s23_)) best = std::min(best, pt.size());
    const SigmaResult r = solver.solve(from_u64(u));
    if (r.sigma != best || r.witness.size() != best || value(r.witness, s23_) != u) {
      problems.push_back("oracle minimum at " + std::to_string(u));
    }
  }
  const std::uint64_t stats_limit = pick(50'000, 500'000);
  const SigmaStats stats = sigma_stats(stats_limit, s23_);
  const bool mean_ok = stats.mean_scaled >= 0.85 && stats.mean_scaled <= 1.15;
  std::ostringstream os;
  os.precision(4);
  os << "mean 4 sigma/log2 U = " << stats.mean_scaled << " over [2, " << stats_limit << "]";
  if (full()) {
    if (!mean_ok) problems.push_back("mean outside [0.85, 1.15]");
  } else {
    os << " (gated only in the full profile)";
  }
  if (!problems.empty()) os << "; failed: " << join(problems);
  return {problems.empty(), os.str()};
}

Outcome Suite::majorant() {
  const std::uint64_t limit = pick(100'000, 1'000'000);
  const double beta = solve_beta(s23_);
  const auto bad = majorant_violation(table23(limit), beta);
  const bool rounds = std::lround(beta * 100) == 79;
  std::ostringstream os;
  os.precision(12);
  os << "beta = " << beta;
  if (bad) os << "; W(" << *bad << ") exceeds U^beta";
  return {!bad && rounds, os.str() + ", checked to " + std::to_string(limit)};
}

Outcome Suite::roots() {
  const double a34 = solve_alpha(make_system(3, 4));
  const double a23 = solve_alpha(s23_);
  const double r23 = std::abs(alpha_residual(a23, s23_));
  bool ok = std::abs(a34 - 1) <= 1e-10 && r23 <= 1e-12 && a23 > 1 && a23 < 1.5;
  const std::vector<std::pair<long, long>> pairs{{2, 3}, {2, 5}, {2, 7}, {2, 9}, {3, 4},
                                                 {3, 5}, {3, 7}, {4, 5}, {5, 7}, {7, 11}};
  std::vector<std::string> bad;
  for (auto [p, q] : pairs) {
    try {
      solve_exponents(make_system(p, q));
    } catch (const InvariantViolation&) {
      bad.push_back("(" + std::to_string(p) + "," + std::to_string(q) + ")");
    }
  }
  ok = ok && bad.empty();
  std::ostringstream os;
  os.precision(15);
  os << "alpha(3,4) = " << a34 << ", alpha(2,3) = " << a23 << " with residual " << r23;
  if (!bad.empty()) os << "; alpha <= beta for " << join(bad);
  return {ok, os.str()};
}

Outcome Suite::partial_sums() {
  const std::uint64_t limit = 100'000;
  const PartialSums sums(limit, s23_);
  for (std::uint64_t x = 1; x <= limit; ++x) {
    const double xd = static_cast<double>(x);
    if (sums.self_similar_rhs(xd) != sums.S(xd)) return {false, "identity fails at x = " + std::to_string(x)};
  }
  std::mt19937_64 rng(opts_.profile == Profile::Full ? 0 : 1);
  std::uniform_real_distribution<double> dist(1.0, static_cast<double>(limit));
  for (int i = 0; i < 1000; ++i) {
    double x = dist(rng);
    if (x == std::floor(x)) x += 0.5;
    if (sums.self_similar_rhs(x) != sums.S(x)) return {false, "identity fails at x = " + std::to_string(x)};
  }
  const CEstimate est = estimate_C(s23_, pick(1u << 17, 1'000'000));
  const bool ok = !est.bound_violated && est.tail_spread < 0.2;
  std::ostringstream os;
  os.precision(6);
  os << "identity exact on 10^5 integers and 1000 reals; last ratio " << est.samples.back().ratio << ", bound "
     << est.upper_bound << ", tail spread " << est.tail_spread;
  return {ok, os.str()};
}

Outcome Suite::graph() {
  const std::uint64_t limit = pick(300, 2000);
  std::vector<Check> checks;
  const unsigned shards = std::max(1u, opts_.threads);
  for (unsigned shard = 0; shard < shards; ++shard) {
    checks.push_back([=, this]() -> std::string {
      for (std::uint64_t u = 1 + shard; u <= limit; u += shards) {
        const TransitionGraph g = build_graph(from_u64(u), s23_);
        std::vector<std::vector<Partition>> adj;
        for (const Partition& v : g.vertices) adj.push_back(neighbors(v, s23_));
        for (std::size_t i = 0; i < g.vertices.size(); ++i) {
          for (const Partition& n : adj[i]) {
            const auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), n);
            if (it == g.vertices.end() || *it != n) return "neighbor outside omega(" + std::to_string(u) + ")";
            const auto& back = adj[it - g.vertices.begin()];
            if (std::find(back.begin(), back.end(), g.vertices[i]) == back.end()) {
              return "asymmetric move in G(" + std::to_string(u) + ")";
            }
          }
        }
        const Connectivity c = connectivity_check(g);
        if (!c.connected) return "G(" + std::to_string(u) + ") is disconnected";
        if (u >= 2 && static_cast<double>(c.diameter) > diameter_bound(from_u64(u))) {
          return "G(" + std::to_string(u) + ") has diameter " + std::to_string(c.diameter);
        }
      }
      return {};
    });
  }
  std::string failure = run_parallel(checks, opts_.threads);
  if (!failure.empty()) return {false, failure};

  std::mt19937_64 rng(0);
  std::uniform_int_distribution<std::uint64_t> pick_u(2, 100'000);
  UniformSampler sampler(s23_, 0);
  std::size_t longest = 0;
  const int samples = full() ? 1000 : 200;
  for (int i = 0; i < samples; ++i) {
    const Nat U = from_u64(pick_u(rng));
    Partition cur = sampler.draw(U);
    const std::vector<Partition> path = reduce_to_binary(cur, s23_);
    for (const Partition& next : path) {
      const auto adj = neighbors(cur, s23_);
      if (std::find(adj.begin(), adj.end(), next) == adj.end()) return {false, "reduction leaves the graph"};
      cur = next;
    }
    if (cur != binary_partition(U, s23_)) return {false, "reduction does not end binary at " + to_decimal(U)};
    if (static_cast<double>(path.size()) > diameter_bound(U)) {
      return {false, "reduction of length " + std::to_string(path.size()) + " at " + to_decimal(U)};
    }
    longest = std::max(longest, path.size());
  }
  return {true, "symmetric, closed and connected to " + std::to_string(limit) + "; longest reduction " +
                    std::to_string(longest) + " over " + std::to_string(samples) + " samples"};
}

Outcome Suite::sampler() {
  const OmegaSet omega = enumerate_decomposed(Nat(27), s23_);
  UniformSampler sampler(s23_, 0);
  const int draws = 7000;
  std::vector<int> hits(omega.members.size());
  for (int i = 0; i < draws; ++i) {
    const Partition pt = sampler.draw(Nat(27));
    const auto it = std::lower_bound(omega.members.begin(), omega.members.end(), pt);
    if (it == omega.members.end() || *it != pt) return {false, "sample outside omega(27)"};
    ++hits[it - omega.members.begin()];
  }
  const double expected = static_cast<double>(draws) / static_cast<double>(hits.size());
  double chi2 = 0;
  for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
  const double critical = 16.811893829770927;  // 0.99 quantile, 6 degrees of freedom
  std::ostringstream os;
  os.precision(5);
  os << "counts {" << join(hits) << "}, chi-square " << chi2 << " vs " << critical;
  return {hits.size() == 7 && chi2 < critical, os.str()};
}

Outcome Suite::codec() {
  const std::uint64_t trip_limit = pick(500, 3000);
  const std::uint64_t code_limit = pick(1000, 10'000);
  DecompositionEnumerator enumerator(s23_);
  std::uint64_t members = 0;
  for (std::uint64_t u = 1; u <= std::max(trip_limit, code_limit); ++u) {
    const OmegaSet omega = enumerator.enumerate(from_u64(u));
    std::vector<TreeWord> tree;
    std::vector<std::string> lattice;
    for (const Partition& m : omega.members) {
      tree.push_back(tree_encode(m, s23_));
      lattice.push_back(lattice_encode(m));
      if (u > trip_limit) continue;
      ++members;
      const TreeDecoded back = tree_decode(tree.back(), s23_);
      if (back.value != u || back.partition != m) return {false, "tree round trip fails at " + std::to_string(u)};
      if (lattice_decode(lattice.back()) != m) return {false, "lattice round trip fails at " + std::to_string(u)};
      if (parse_tree_word(format_tree_word(tree.back(), s23_), s23_) != tree.back()) {
        return {false, "tree word text form fails at " + std::to_string(u)};
      }
    }
    if (u > code_limit) continue;
    if (!is_hypercode(tree)) return {false, "tree words of " + std::to_string(u) + " are not a hypercode"};
    if (!is_infix_code(lattice)) return {false, "lattice words of " + std::to_string(u) + " are not an infix code"};
  }

  // Every word over {0,1,2,3} up to length 8 is checked for rejection; up to
  // length 12 every valid word must be fixed by decode then encode. Prefixes
  // holding 02 or 12 stay invalid, so the long sweep skips them.
  std::uint64_t valid = 0;
  std::string word;
  std::string failure;
  std::function<void()> walk = [&] {
    if (!failure.empty()) return;
    if (!word.empty()) {
      if (is_valid_lattice_word(word)) {
        ++valid;
        if (lattice_encode(lattice_decode(word)) != word) failure = "lattice word " + word + " is not canonical";
      } else if (word.size() <= 8) {
        bool threw = false;
        try {
          lattice_decode(word);
        } catch (const DomainError&) {
          threw = true;
        }
        if (!threw) failure = "invalid word " + word + " decodes";
      }
    }
    if (word.size() == 12) return;
    const bool prefix_dead = word.find("02") != std::string::npos || word.find("12") != std::string::npos;
    for (char c : std::string("0123")) {
      const bool dead = prefix_dead || (c == '2' && !word.empty() && (word.back() == '0' || word.back() == '1'));
      if (dead && word.size() >= 8) continue;
      word.push_back(c);
      walk();
      word.pop_back();
    }
  };
  walk();
  if (!failure.empty()) return {false, failure};
  return {true, std::to_string(members) + " members round-trip to " + std::to_string(trip_limit) +
                    ", codes hold to " + std::to_string(code_limit) + ", " + std::to_string(valid) +
                    " valid words up to length 12 are canonical"};
}

Outcome Suite::powers_of_two_base3() {
  std::vector<unsigned> hits;
  for (unsigned n = 0; n <= 30; ++n) {
    if (w_digit(power(2, n), 3) == 1) hits.push_back(n);
  }
  return {hits == std::vector<unsigned>{0, 2, 8}, "n in {" + join(hits) + "}"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  Suite suite(opts);
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (opts.only && *opts.only != id) continue;
    CriterionResult r;
    r.id = id;
    r.title = kTitles[id - 1];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = suite.run(id);
      r.pass = o.pass;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = seconds_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_text(const CriterionResult& r) {
  char head[48];
  std::snprintf(head, sizeof head, "%s %2d %8.2fs  ", r.pass ? "PASS" : "FAIL", r.id, r.seconds);
  return head + r.title + ": " + r.detail;
}

std::string format_json(const CriterionResult& r) {
  nlohmann::ordered_json j;
  j["criterion"] = r.id;
  j["title"] = r.title;
  j["pass"] = r.pass;
  j["seconds"] = std::round(r.seconds * 1000) / 1000;
  j["detail"] = r.detail;
  return j.dump();
}

}  // namespace chainpart
