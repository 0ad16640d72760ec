#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chainpart/errors.hpp"
#include "chainpart/nat.hpp"

namespace chainpart {

/// A validated pair of coprime bases p, q >= 2 with k0 = p^-1 mod q and
/// l0 = q^-1 mod p.
class PQSystem {
 public:
  unsigned long p() const { return p_; }
  unsigned long q() const { return q_; }
  unsigned long k0() const { return k0_; }
  unsigned long l0() const { return l0_; }
  unsigned long pq() const { return p_ * q_; }
  unsigned long min_base() const { return p_ < q_ ? p_ : q_; }
  /// True when one of the bases is 2, i.e. "binary amount" is defined.
  bool has_binary_base() const { return min_base() == 2; }

  friend bool operator==(const PQSystem&, const PQSystem&) = default;

 private:
  friend PQSystem make_system(long p, long q);
  PQSystem(unsigned long p, unsigned long q, unsigned long k0, unsigned long l0)
      : p_(p), q_(q), k0_(k0), l0_(l0) {}

  unsigned long p_, q_, k0_, l0_;
};

PQSystem make_system(long p, long q);

/// Exponent pair (a, b) of the part p^a * q^b.
struct Exponents {
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  friend auto operator<=>(const Exponents&, const Exponents&) = default;
};

/// Product order on N^2.
inline bool below_or_equal(Exponents lhs, Exponents rhs) { return lhs.a <= rhs.a && lhs.b <= rhs.b; }

/// A strictly chained (p,q)-ary partition stored by exponent pairs, largest
/// part first. Consecutive pairs are strictly decreasing in the product order.
class Partition {
 public:
  Partition() = default;

  /// Throws InvalidPartition(ChainBreak) unless `parts` is a strict chain
  /// listed from the largest part down.
  static Partition from_chain(std::vector<Exponents> parts);

  const std::vector<Exponents>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  Exponents largest() const { return parts_.front(); }
  Exponents smallest() const { return parts_.back(); }
  bool contains(Exponents e) const;

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  explicit Partition(std::vector<Exponents> parts) : parts_(std::move(parts)) {}
  friend Partition trusted_partition(std::vector<Exponents>);

  std::vector<Exponents> parts_;
};

/// Skips the chain check; for internal code that constructs chains by
/// construction.
Partition trusted_partition(std::vector<Exponents> parts);

bool is_chain(std::span<const Exponents> parts);

/// Unordered multiset of part values. No chain or distinctness guarantee.
struct RawMultiset {
  std::vector<Nat> values;  // kept sorted, largest first
};

class InvalidPartition : public DomainError {
 public:
  enum class Reason { NonPositive, NonSmooth, Duplicate, ChainBreak };

  InvalidPartition(Reason reason, const std::string& what) : DomainError(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

Nat part_value(Exponents e, const PQSystem& sys);
Nat value(const Partition& pt, const PQSystem& sys);
RawMultiset values_of(const Partition& pt, const PQSystem& sys);

/// Accepts a multiset iff it is a strictly chained (p,q)-ary partition.
Partition validate(const RawMultiset& parts, const PQSystem& sys);

Partition map_p(const Partition& pt);
Partition map_q(const Partition& pt);

/// Binary-amount increment when min(p,q) = 2, otherwise appends a part 1.
/// The result need not be a chain.
RawMultiset map_one(const Partition& pt, const PQSystem& sys);

/// Same transform on exponents; nothing when the result breaks the chain or
/// repeats the part 1.
std::optional<Partition> try_map_one(const Partition& pt, const PQSystem& sys);

/// Inverse of try_map_one. Nothing when pt has no preimage.
std::optional<Partition> try_unmap_one(const Partition& pt, const PQSystem& sys);

/// Sum of the parts that are powers of the base equal to 2.
Nat binary_amount(const Partition& pt, const PQSystem& sys);

/// The partition of U into distinct powers of 2. Requires min(p,q) = 2.
Partition binary_partition(const Nat& U, const PQSystem& sys);

struct Limits {
  std::uint64_t enumeration_ceiling = 10'000'000;
  /// Upper bound on partitions held by an enumeration memo.
  std::uint64_t memory_budget = 20'000'000;

  /// Defaults, with CHAINPART_CEILING overriding the ceiling when set.
  static Limits from_environment();
};

/// Depth-first oracle: picks each admissible largest part, then recurses on
/// its proper divisors. Result is sorted.
std::vector<Partition> brute_force_enumerate(const Nat& U, const PQSystem& sys,
                                             const Limits& limits = {});

}  // namespace chainpart
