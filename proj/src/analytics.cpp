#include "chainpart/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "chainpart/count.hpp"
#include "chainpart/enumerate.hpp"

namespace chainpart {

PartialSums::PartialSums(std::uint64_t limit, const PQSystem& sys)
    : sys_(sys), limit_(limit), counts_(count_range(limit, sys)) {
  prefix_.reserve(limit + 1);
  prefix_.emplace_back(0);
  for (std::uint64_t n = 1; n <= limit; ++n) prefix_.push_back(prefix_.back() + counts_[n]);
}

Nat PartialSums::W_star(std::uint64_t n) const {
  auto at = [&](std::uint64_t d) { return n % d == 0 ? counts_.at(n / d) : Nat(0); };
  return at(sys_.p()) + at(sys_.q()) - at(sys_.pq());
}

const Nat& PartialSums::S(double x) const {
  if (!(x >= 0)) throw DomainError("S(x) needs x >= 0");
  const double n = std::floor(x);
  if (n > static_cast<double>(limit_)) throw DomainError("S(x) beyond the tabulated range");
  return prefix_[static_cast<std::uint64_t>(n)];
}

Nat PartialSums::self_similar_rhs(double x) const {
  const double p = static_cast<double>(sys_.p()), q = static_cast<double>(sys_.q());
  Nat inner = S(x / p) + S(x / q) - S(x / (p * q));
  return 2 * inner + 1 - W_star(static_cast<std::uint64_t>(std::floor(x)));
}

double alpha_residual(double alpha, const PQSystem& sys) {
  const double p = static_cast<double>(sys.p()), q = static_cast<double>(sys.q());
  return std::pow(p, -alpha) + std::pow(q, -alpha) - std::pow(p * q, -alpha) - 0.5;
}

double beta_residual(double beta, const PQSystem& sys) {
  const double p = static_cast<double>(sys.p()), q = static_cast<double>(sys.q());
  return std::pow(p, -beta) + std::pow(q, -beta) - 1.0;
}

namespace {

template <class F>
double bisect_decreasing(F f) {
  double lo = 1e-6, hi = 8.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

}  // namespace

double solve_alpha(const PQSystem& sys) {
  return bisect_decreasing([&](double a) { return alpha_residual(a, sys); });
}

double solve_beta(const PQSystem& sys) {
  return bisect_decreasing([&](double b) { return beta_residual(b, sys); });
}

ExponentPairRoots solve_exponents(const PQSystem& sys) {
  ExponentPairRoots r;
  r.alpha = solve_alpha(sys);
  r.beta = solve_beta(sys);
  r.alpha_residual = alpha_residual(r.alpha, sys);
  r.beta_residual = beta_residual(r.beta, sys);
  if (!(r.alpha > r.beta)) throw InvariantViolation("alpha does not exceed beta");
  return r;
}

double c_upper_bound(const PQSystem& sys, double alpha) {
  const double pa = std::pow(static_cast<double>(sys.p()), alpha);
  const double qa = std::pow(static_cast<double>(sys.q()), alpha);
  return 2.0 / (std::log(pa) / (pa - 1) + std::log(qa) / (qa - 1));
}

CEstimate estimate_C(const PQSystem& sys, std::uint64_t xmax) {
  if (xmax < 10) throw DomainError("estimate_C needs xmax >= 10");
  CEstimate est;
  est.alpha = solve_alpha(sys);
  est.upper_bound = c_upper_bound(sys, est.alpha);
  PartialSums sums(xmax, sys);
  for (unsigned k = 0; (std::uint64_t{1} << k) <= xmax; ++k) {
    DyadicSample s;
    s.k = k;
    s.x = std::uint64_t{1} << k;
    s.S = sums.S_floor(s.x);
    s.ratio = s.S.get_d() / std::exp2(k * est.alpha);
    est.bound_violated = est.bound_violated || s.ratio > est.upper_bound;
    est.samples.push_back(std::move(s));
  }
  if (est.samples.size() >= 5) {
    auto tail = std::vector<DyadicSample>(est.samples.end() - 5, est.samples.end());
    auto [lo, hi] = std::minmax_element(tail.begin(), tail.end(),
                                        [](const auto& l, const auto& r) { return l.ratio < r.ratio; });
    est.tail_spread = (hi->ratio - lo->ratio) / hi->ratio;
  }
  return est;
}

std::vector<MonotonicityViolation> monotonicity_check(const std::vector<Nat>& counts, const PQSystem& sys) {
  if (sys.p() != 2) throw DomainError("the monotonicity check needs p = 2");
  const std::uint64_t q = sys.q();
  std::vector<MonotonicityViolation> out;
  auto expect_ge = [&](std::uint64_t big, std::uint64_t small, const char* relation) {
    if (counts[big] < counts[small]) out.push_back({small, relation, counts[big], counts[small]});
  };
  for (std::uint64_t base = 0; base + q - 1 < counts.size(); base += q) {
    for (std::uint64_t r = 0; r + 1 < q; ++r) expect_ge(base + r, base + r + 1, "W(qU+r) >= W(qU+r+1)");
    if (base > 0) expect_ge(base + 1, base - 1, "W(qU+1) >= W(qU-1)");
  }
  return out;
}

std::vector<MonotonicityViolation> monotonicity_check(std::uint64_t limit, const PQSystem& sys) {
  if (sys.p() != 2) throw DomainError("the monotonicity check needs p = 2");
  return monotonicity_check(count_range(limit, sys), sys);
}

MaxWReport maxw_scan(const std::vector<Nat>& counts, const PQSystem& sys) {
  if (sys.p() != 2) throw DomainError("the max-W scan needs p = 2");
  const std::uint64_t q = sys.q();
  MaxWReport report;
  if (counts.empty()) return report;
  Nat best = counts[0];
  for (std::uint64_t x = 1; x < counts.size(); ++x) {
    if (counts[x] <= best) continue;
    best = counts[x];
    if (x % q != 0) throw InvariantViolation("max-W jump at " + std::to_string(x) + " is not a multiple of q");
    JumpRecord rec{x, best, x % 2 == 1};
    if (!rec.odd_multiple_of_q) {
      if (x % (2 * q * q) != 0) {
        throw InvariantViolation("even max-W jump at " + std::to_string(x) + " is not a multiple of 2q^2");
      }
      report.conjecture_exceptions.push_back(x);
    }
    report.jumps.push_back(std::move(rec));
  }
  return report;
}

MaxWReport maxw_scan(std::uint64_t limit, const PQSystem& sys) {
  if (sys.p() != 2) throw DomainError("the max-W scan needs p = 2");
  return maxw_scan(count_range(limit, sys), sys);
}

namespace {

bool is_power_of_two_multiple(std::uint64_t n, std::uint64_t factor) {
  if (n == 0 || n % factor != 0) return false;
  const std::uint64_t k = n / factor;
  return (k & (k - 1)) == 0;
}

}  // namespace

bool has_single_partition_form(std::uint64_t U) { return U <= 1 || is_power_of_two_multiple(U + 1, 3); }

bool has_two_partition_form(std::uint64_t U) {
  return U == 3 || U == 4 || U == 6 || U == 7 || is_power_of_two_multiple(U + 1, 9) ||
         is_power_of_two_multiple(U + 1, 15);
}

SmallWReport characterize_small_W(const std::vector<Nat>& counts) {
  SmallWReport report;
  for (std::uint64_t u = 0; u < counts.size(); ++u) {
    const bool one = counts[u] == 1, two = counts[u] == 2;
    if (one != has_single_partition_form(u)) {
      throw InvariantViolation("W(" + std::to_string(u) + ") = " + to_decimal(counts[u]) +
                               " contradicts the W = 1 characterization");
    }
    if (two != has_two_partition_form(u)) {
      throw InvariantViolation("W(" + std::to_string(u) + ") = " + to_decimal(counts[u]) +
                               " contradicts the W = 2 characterization");
    }
    if (one) {
      report.ones.push_back(u);
    } else if (two) {
      report.twos.push_back(u);
    } else {
      ++report.others;
    }
  }
  return report;
}

SmallWReport characterize_small_W(std::uint64_t limit) {
  return characterize_small_W(count_range(limit, make_system(2, 3)));
}

std::vector<WitnessStep> unboundedness_witness(const Nat& U0, unsigned n, const PQSystem& sys) {
  GeneralCounter counter(sys);
  if (counter.count(U0) < 2) throw DomainError("W(U0) must be at least 2");
  const OmegaSet omega = enumerate_decomposed(U0, sys);
  const Exponents first = omega.members[0].largest(), second = omega.members[1].largest();
  const unsigned long c = std::max(first.a, second.a), d = std::max(first.b, second.b);
  std::vector<WitnessStep> out;
  Nat U = U0;
  for (unsigned k = 1; k <= n; ++k) {
    if (k > 1) U *= 1 + power(sys.p(), (k - 1) * c) * power(sys.q(), (k - 1) * d);
    WitnessStep step;
    step.n = k;
    step.U = U;
    step.W = counter.count(U);
    step.holds = step.W >= power(2, k);
    out.push_back(std::move(step));
  }
  return out;
}

std::optional<std::uint64_t> majorant_violation(const std::vector<Nat>& counts, double beta) {
  for (std::uint64_t u = 1; u < counts.size(); ++u) {
    if (std::log(counts[u].get_d()) > beta * std::log(static_cast<double>(u)) + 1e-12) return u;
  }
  return std::nullopt;
}

}  // namespace chainpart
