#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "chainpart/core.hpp"
#include "chainpart/memo.hpp"

namespace chainpart {

struct SigmaResult {
  Nat U;
  unsigned sigma = 0;
  Partition witness;
};

/// Operation counts of evaluating g^U along a chain, largest part first:
/// a1 p-th powers, b1 q-th powers and one multiplication per extra part.
struct ChainCost {
  std::uint64_t p_ops = 0;
  std::uint64_t q_ops = 0;
  std::uint64_t adds = 0;

  friend bool operator==(const ChainCost&, const ChainCost&) = default;
};

/// sigma(U) = min |pt| over Ω(U), via
///   sigma(pqU) = min(sigma(qU), sigma(pU)),  sigma(pqU+1) = 1 + sigma(pqU)
/// and the residue table for the other classes. Ties go to the first branch
/// of the table.
class ShortestSolver {
 public:
  explicit ShortestSolver(const PQSystem& sys) : sys_(sys) {}

  /// Nothing when Ω(U) is empty.
  std::optional<unsigned> length(const Nat& U);

  /// Throws DomainError when Ω(U) is empty.
  SigmaResult solve(const Nat& U);

 private:
  static constexpr std::uint32_t kEmpty = UINT32_MAX;
  std::uint32_t raw(const Nat& U);

  PQSystem sys_;
  MemoTable<std::uint32_t> memo_;
};

SigmaResult sigma(const Nat& U, const PQSystem& sys);

struct SigmaStats {
  std::uint64_t samples = 0;       // reachable U in [2, limit]
  double mean_ratio = 0;           // mean of sigma(U) / log2(U)
  double mean_scaled = 0;          // mean of 4 sigma(U) / log2(U)
  std::map<unsigned, std::uint64_t> histogram;
};

SigmaStats sigma_stats(std::uint64_t limit, const PQSystem& sys);

ChainCost chain_cost(const Partition& chain);

/// g^value(chain) mod m by Horner evaluation down the chain.
Nat chain_pow(const Nat& g, const Partition& chain, const Nat& modulus, const PQSystem& sys);

/// Same, along the shortest-partition witness of U.
Nat chain_pow(const Nat& g, const Nat& U, const Nat& modulus, const PQSystem& sys);

}  // namespace chainpart
