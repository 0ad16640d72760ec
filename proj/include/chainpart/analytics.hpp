#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chainpart/core.hpp"

namespace chainpart {

/// W(0..limit) with prefix sums S(n) = W(1) + ... + W(n).
class PartialSums {
 public:
  PartialSums(std::uint64_t limit, const PQSystem& sys);

  std::uint64_t limit() const { return limit_; }
  const PQSystem& system() const { return sys_; }
  const Nat& W(std::uint64_t n) const { return counts_.at(n); }
  /// W*(n) = W(n/p) + W(n/q) - W(n/pq) from the same table.
  Nat W_star(std::uint64_t n) const;

  /// S(x) for real x >= 0; zero below 1.
  const Nat& S(double x) const;
  const Nat& S_floor(std::uint64_t n) const { return prefix_.at(n); }

  /// 2(S(x/p) + S(x/q) - S(x/pq)) + 1 - W*(floor x), which must equal S(x).
  Nat self_similar_rhs(double x) const;

 private:
  PQSystem sys_;
  std::uint64_t limit_;
  std::vector<Nat> counts_;
  std::vector<Nat> prefix_;
};

struct ExponentPairRoots {
  double alpha = 0;           // p^-a + q^-a - (pq)^-a = 1/2
  double beta = 0;            // p^-b + q^-b = 1
  double alpha_residual = 0;
  double beta_residual = 0;
};

double alpha_residual(double alpha, const PQSystem& sys);
double beta_residual(double beta, const PQSystem& sys);

/// Bisection on [1e-6, 8]; both residuals are strictly decreasing there.
double solve_alpha(const PQSystem& sys);
double solve_beta(const PQSystem& sys);

/// Both roots; throws InvariantViolation unless alpha > beta.
ExponentPairRoots solve_exponents(const PQSystem& sys);

/// 2 / (ln p^a / (p^a - 1) + ln q^a / (q^a - 1)) at a = alpha.
double c_upper_bound(const PQSystem& sys, double alpha);

struct DyadicSample {
  unsigned k = 0;
  std::uint64_t x = 0;  // 2^k
  Nat S;
  double ratio = 0;     // S(2^k) / 2^(k alpha)
};

struct CEstimate {
  double alpha = 0;
  double upper_bound = 0;
  std::vector<DyadicSample> samples;
  bool bound_violated = false;
  /// (max - min) / max over the last five ratios.
  double tail_spread = 0;
};

/// Needs xmax >= 10.
CEstimate estimate_C(const PQSystem& sys, std::uint64_t xmax);

struct MonotonicityViolation {
  std::uint64_t at = 0;     // the larger argument that should not exceed
  std::string relation;     // e.g. "W(qU) >= W(qU+1)"
  Nat lhs, rhs;
};

/// Scans U with qU+q-1 <= limit for W(qU) >= W(qU+1) >= W(qU-1) and
/// W(qU+r) >= W(qU+r+1), 0 <= r < q-1. Requires p = 2.
std::vector<MonotonicityViolation> monotonicity_check(std::uint64_t limit, const PQSystem& sys);
std::vector<MonotonicityViolation> monotonicity_check(const std::vector<Nat>& counts, const PQSystem& sys);

struct JumpRecord {
  std::uint64_t x = 0;
  Nat value;
  bool odd_multiple_of_q = false;  // x in q(2N+1)
};

struct MaxWReport {
  std::vector<JumpRecord> jumps;
  /// Jumps outside q(2N+1); all of them are multiples of 2q^2.
  std::vector<std::uint64_t> conjecture_exceptions;
};

/// Records of x -> max_{U<=x} W(U) for 1 <= x <= limit. Requires p = 2.
/// Throws InvariantViolation on a jump not divisible by q, or an even jump
/// not divisible by 2q^2.
MaxWReport maxw_scan(std::uint64_t limit, const PQSystem& sys);
MaxWReport maxw_scan(const std::vector<Nat>& counts, const PQSystem& sys);

/// U in {0,1} or U = 2^a*3 - 1.
bool has_single_partition_form(std::uint64_t U);
/// U in {3,4,6,7} or U = 2^a*9 - 1 or U = 2^a*15 - 1.
bool has_two_partition_form(std::uint64_t U);

struct SmallWReport {
  std::vector<std::uint64_t> ones;
  std::vector<std::uint64_t> twos;
  std::uint64_t others = 0;
};

/// Splits [0, limit] by W for (2,3) and checks both forms; throws
/// InvariantViolation on a mismatch.
SmallWReport characterize_small_W(std::uint64_t limit);
SmallWReport characterize_small_W(const std::vector<Nat>& counts);

struct WitnessStep {
  unsigned n = 0;  // W(U) >= 2^n is claimed
  Nat U;
  Nat W;
  bool holds = false;
};

/// U_1 = U0, U_{n+1} = (1 + p^{nc} q^{nd}) U_n, where (c,d) is the
/// componentwise max of the largest parts of two members of Ω(U0).
/// Throws DomainError when W(U0) < 2.
std::vector<WitnessStep> unboundedness_witness(const Nat& U0, unsigned n, const PQSystem& sys);

/// First U in [1, limit] with W(U) > U^beta, if any.
std::optional<std::uint64_t> majorant_violation(const std::vector<Nat>& counts, double beta);

}  // namespace chainpart
