#include "chainpart/shortest.hpp"

#include <algorithm>
#include <cmath>

#include "chainpart/enumerate.hpp"

namespace chainpart {

namespace {

std::uint32_t unit_steps(const Branch& b) {
  return static_cast<std::uint32_t>(std::count(b.steps.begin(), b.steps.end(), Step::Unit));
}

}  // namespace

std::uint32_t ShortestSolver::raw(const Nat& U) {
  auto deps = [&](const Nat& u) {
    std::vector<Nat> out;
    if (u < 2) return out;
    for (Branch& b : decompose(u, sys_, DecompositionMode::General)) out.push_back(std::move(b.child));
    return out;
  };
  auto combine = [&](const Nat& u, const auto& lookup) -> std::uint32_t {
    if (sgn(u) == 0) return 0;
    if (u == 1) return 1;
    std::uint32_t best = kEmpty;
    for (const Branch& b : decompose(u, sys_, DecompositionMode::General)) {
      std::uint32_t child = lookup(b.child);
      if (child != kEmpty) best = std::min(best, child + unit_steps(b));
    }
    return best;
  };
  return evaluate(memo_, U, deps, combine);
}

std::optional<unsigned> ShortestSolver::length(const Nat& U) {
  std::uint32_t s = raw(U);
  if (s == kEmpty) return std::nullopt;
  return s;
}

SigmaResult ShortestSolver::solve(const Nat& U) {
  const std::uint32_t best = raw(U);
  if (best == kEmpty) throw DomainError("Ω(" + to_decimal(U) + ") is empty");
  // Walk down the argmin branches, then rebuild the witness on the way up.
  std::vector<Branch> path;
  Nat cur = U;
  while (cur >= 2) {
    const std::uint32_t target = raw(cur);
    bool found = false;
    for (Branch& b : decompose(cur, sys_, DecompositionMode::General)) {
      std::uint32_t child = raw(b.child);
      if (child != kEmpty && child + unit_steps(b) == target) {
        cur = b.child;
        path.push_back(std::move(b));
        found = true;
        break;
      }
    }
    if (!found) throw InvariantViolation("no branch attains sigma(" + to_decimal(cur) + ")");
  }
  Partition witness = sgn(cur) == 0 ? Partition{} : trusted_partition({{0, 0}});
  for (auto it = path.rbegin(); it != path.rend(); ++it) witness = apply_branch(*it, witness, sys_);
  return {U, best, std::move(witness)};
}

SigmaResult sigma(const Nat& U, const PQSystem& sys) { return ShortestSolver(sys).solve(U); }

SigmaStats sigma_stats(std::uint64_t limit, const PQSystem& sys) {
  if (limit < 2) throw DomainError("sigma statistics need limit >= 2");
  ShortestSolver solver(sys);
  SigmaStats stats;
  double sum = 0;
  for (std::uint64_t u = 2; u <= limit; ++u) {
    auto s = solver.length(from_u64(u));
    if (!s) continue;
    ++stats.samples;
    ++stats.histogram[*s];
    sum += *s / std::log2(static_cast<double>(u));
  }
  if (stats.samples > 0) {
    stats.mean_ratio = sum / static_cast<double>(stats.samples);
    stats.mean_scaled = 4 * stats.mean_ratio;
  }
  return stats;
}

ChainCost chain_cost(const Partition& chain) {
  if (chain.empty()) return {};
  return {chain.largest().a, chain.largest().b, chain.size() - 1};
}

Nat chain_pow(const Nat& g, const Partition& chain, const Nat& modulus, const PQSystem& sys) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  const mpz_srcptr m = modulus.get_mpz_t();
  auto raise = [&](Nat& y, unsigned long base, std::uint32_t times) {
    for (std::uint32_t i = 0; i < times; ++i) mpz_powm_ui(y.get_mpz_t(), y.get_mpz_t(), base, m);
  };
  Nat base = g % modulus;
  if (chain.empty()) return Nat(1) % modulus;
  // y carries g^((d1 + ... + di) / di) after part i.
  Nat y = base;
  const auto& parts = chain.parts();
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    raise(y, sys.p(), parts[i].a - parts[i + 1].a);
    raise(y, sys.q(), parts[i].b - parts[i + 1].b);
    y = y * base % modulus;
  }
  raise(y, sys.p(), parts.back().a);
  raise(y, sys.q(), parts.back().b);
  return y;
}

Nat chain_pow(const Nat& g, const Nat& U, const Nat& modulus, const PQSystem& sys) {
  if (sgn(U) == 0) return Nat(1) % modulus;
  return chain_pow(g, sigma(U, sys).witness, modulus, sys);
}

}  // namespace chainpart
