#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "chainpart/core.hpp"
#include "chainpart/count.hpp"
#include "chainpart/memo.hpp"

namespace chainpart {

/// Ω(U): all strictly chained partitions of U, sorted.
struct OmegaSet {
  Nat U;
  std::vector<Partition> members;
};

/// Edge label of the generation tree, read from a node towards the leaves:
/// Unit goes from U to U-1, TimesP from U to U/p, TimesQ from U to U/q.
enum class Step : std::uint8_t { Unit, TimesP, TimesQ };

/// One disjoint piece of Ω(U): the partitions obtained from Ω(child) by
/// undoing `steps` in reverse order. With `exclude_p_multiples` only the
/// members of Ω(child) whose smallest part is not a multiple of p are used
/// (the set difference Ω(pV) minus pΩ(V)).
struct Branch {
  std::vector<Step> steps;
  Nat child;
  bool exclude_p_multiples = false;
};

enum class DecompositionMode {
  /// Residue classes mod pq, with set differences for r = 0, 1.
  General,
  /// p = 2 only: Ω(2qV) = qΩ(2V) + 1Ω(2qV-1) and Ω(2qV+1) = 1Ω(2qV);
  /// every union is disjoint and no set difference is needed.
  Binary,
};

/// Binary when p = 2, General otherwise.
DecompositionMode default_mode(const PQSystem& sys);

/// Branches of Ω(U) for U >= 2, in case-table order. An empty result means
/// Ω(U) is empty.
std::vector<Branch> decompose(const Nat& U, const PQSystem& sys, DecompositionMode mode);

/// Rebuilds a member of Ω(U) from a member of Ω(branch.child). Throws
/// InvariantViolation if a Unit step breaks the chain.
Partition apply_branch(const Branch& branch, const Partition& child, const PQSystem& sys);

/// Undoes the branch steps; nothing when pt does not belong to the branch.
std::optional<Partition> strip_branch(const Branch& branch, const Partition& pt, const PQSystem& sys);

/// Ω(U) = Ω*(U) + 1Ω*(U-1) and Ω*(U) = pΩ(U/p) ∪ qΩ(U/q), memoized.
class GeneralEnumerator {
 public:
  explicit GeneralEnumerator(const PQSystem& sys, Limits limits = {}) : sys_(sys), limits_(limits) {}
  OmegaSet enumerate(const Nat& U);

 private:
  using Members = std::shared_ptr<const std::vector<Partition>>;
  PQSystem sys_;
  Limits limits_;
  MemoTable<Members> memo_{1u << 20};
  std::uint64_t stored_ = 0;
};

/// Walks the branch decomposition, memoized.
class DecompositionEnumerator {
 public:
  explicit DecompositionEnumerator(const PQSystem& sys, Limits limits = {})
      : DecompositionEnumerator(sys, default_mode(sys), limits) {}
  DecompositionEnumerator(const PQSystem& sys, DecompositionMode mode, Limits limits = {});
  OmegaSet enumerate(const Nat& U);

 private:
  using Members = std::shared_ptr<const std::vector<Partition>>;
  PQSystem sys_;
  DecompositionMode mode_;
  Limits limits_;
  MemoTable<Members> memo_{1u << 20};
  std::uint64_t stored_ = 0;
};

OmegaSet enumerate_general(const Nat& U, const PQSystem& sys, const Limits& limits = {});
OmegaSet enumerate_decomposed(const Nat& U, const PQSystem& sys, const Limits& limits = {});

/// Exact uniform sampling from Ω(U) by descending the branch decomposition
/// with probabilities proportional to branch sizes. Set-difference branches
/// are sampled by rejection.
class UniformSampler {
 public:
  UniformSampler(const PQSystem& sys, std::uint64_t seed);
  UniformSampler(const PQSystem& sys, DecompositionMode mode, std::uint64_t seed);

  /// Throws DomainError when W(U) = 0.
  Partition draw(const Nat& U);

  Counter& counter() { return counter_; }

 private:
  Partition draw_member(const Nat& U);
  Nat branch_weight(const Branch& b);

  PQSystem sys_;
  DecompositionMode mode_;
  GeneralCounter counter_;
  gmp_randclass rng_;
};

Partition sample_uniform(const Nat& U, const PQSystem& sys, std::uint64_t seed);

}  // namespace chainpart
