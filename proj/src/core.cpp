#include "chainpart/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>

namespace chainpart {

Nat parse_nat(std::string_view text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw DomainError("not a nonnegative decimal integer: '" + std::string(text) + "'");
  }
  return Nat(std::string(text), 10);
}

namespace {

// Inverse of a modulo m for coprime a, m >= 2.
unsigned long inverse_mod(unsigned long a, unsigned long m) {
  long long r0 = static_cast<long long>(m), r1 = static_cast<long long>(a % m);
  long long t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long k = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - k * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - k * t1};
  }
  long long mm = static_cast<long long>(m);
  return static_cast<unsigned long>(((t0 % mm) + mm) % mm);
}

// Which coordinate counts powers of 2, when one base is 2.
bool binary_on_a(const PQSystem& sys) { return sys.p() == 2; }

std::uint32_t binary_exponent(Exponents e, const PQSystem& sys) { return binary_on_a(sys) ? e.a : e.b; }
bool is_binary_part(Exponents e, const PQSystem& sys) { return binary_on_a(sys) ? e.b == 0 : e.a == 0; }
Exponents binary_part(std::uint32_t k, const PQSystem& sys) {
  return binary_on_a(sys) ? Exponents{k, 0} : Exponents{0, k};
}

void require_binary(const PQSystem& sys, const char* what) {
  if (!sys.has_binary_base()) {
    throw DomainError(std::string(what) + " needs min(p,q) = 2");
  }
}

// Appends the binary expansion of n, highest bit first.
void append_bits(std::vector<Exponents>& out, const Nat& n, const PQSystem& sys) {
  if (sgn(n) == 0) return;
  for (auto bit = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      out.push_back(binary_part(static_cast<std::uint32_t>(bit), sys));
    }
  }
}

// Splits pt into its non-binary prefix and its binary amount.
std::pair<std::vector<Exponents>, Nat> split_binary(const Partition& pt, const PQSystem& sys) {
  std::vector<Exponents> rest;
  Nat amount = 0;
  for (Exponents e : pt.parts()) {
    if (is_binary_part(e, sys)) {
      Nat bit;
      mpz_setbit(bit.get_mpz_t(), binary_exponent(e, sys));
      amount += bit;
    } else {
      rest.push_back(e);
    }
  }
  return {std::move(rest), std::move(amount)};
}

}  // namespace

PQSystem make_system(long p, long q) {
  if (p < 2 || q < 2) throw DomainError("bases must be at least 2");
  if (p > (1L << 30) || q > (1L << 30)) throw DomainError("bases must be below 2^30");
  if (std::gcd(p, q) != 1) {
    throw DomainError("bases " + std::to_string(p) + " and " + std::to_string(q) + " are not coprime");
  }
  auto up = static_cast<unsigned long>(p), uq = static_cast<unsigned long>(q);
  return PQSystem(up, uq, inverse_mod(up, uq), inverse_mod(uq, up));
}

bool is_chain(std::span<const Exponents> parts) {
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!below_or_equal(parts[i], parts[i - 1]) || parts[i] == parts[i - 1]) return false;
  }
  return true;
}

Partition Partition::from_chain(std::vector<Exponents> parts) {
  if (!is_chain(parts)) {
    throw InvalidPartition(InvalidPartition::Reason::ChainBreak, "exponent pairs do not form a strict chain");
  }
  return Partition(std::move(parts));
}

bool Partition::contains(Exponents e) const {
  return std::find(parts_.begin(), parts_.end(), e) != parts_.end();
}

Partition trusted_partition(std::vector<Exponents> parts) { return Partition(std::move(parts)); }

Nat part_value(Exponents e, const PQSystem& sys) { return power(sys.p(), e.a) * power(sys.q(), e.b); }

Nat value(const Partition& pt, const PQSystem& sys) {
  Nat sum = 0;
  for (Exponents e : pt.parts()) sum += part_value(e, sys);
  return sum;
}

RawMultiset values_of(const Partition& pt, const PQSystem& sys) {
  RawMultiset out;
  for (Exponents e : pt.parts()) out.values.push_back(part_value(e, sys));
  return out;
}

Partition validate(const RawMultiset& parts, const PQSystem& sys) {
  std::vector<std::pair<Nat, Exponents>> factored;
  for (const Nat& v : parts.values) {
    if (sgn(v) <= 0) {
      throw InvalidPartition(InvalidPartition::Reason::NonPositive, "part " + to_decimal(v) + " is not positive");
    }
    Nat rest = v;
    Exponents e;
    while (divisible(rest, sys.p())) {
      rest /= sys.p();
      ++e.a;
    }
    while (divisible(rest, sys.q())) {
      rest /= sys.q();
      ++e.b;
    }
    if (rest != 1) {
      throw InvalidPartition(InvalidPartition::Reason::NonSmooth,
                             "part " + to_decimal(v) + " is not of the form p^a*q^b");
    }
    factored.emplace_back(v, e);
  }
  std::sort(factored.begin(), factored.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  std::vector<Exponents> chain;
  for (std::size_t i = 0; i < factored.size(); ++i) {
    if (i > 0 && factored[i].first == factored[i - 1].first) {
      throw InvalidPartition(InvalidPartition::Reason::Duplicate,
                             "part " + to_decimal(factored[i].first) + " is repeated");
    }
    chain.push_back(factored[i].second);
  }
  if (!is_chain(chain)) {
    throw InvalidPartition(InvalidPartition::Reason::ChainBreak, "parts are not totally ordered by divisibility");
  }
  return trusted_partition(std::move(chain));
}

Partition map_p(const Partition& pt) {
  std::vector<Exponents> out = pt.parts();
  for (Exponents& e : out) ++e.a;
  return trusted_partition(std::move(out));
}

Partition map_q(const Partition& pt) {
  std::vector<Exponents> out = pt.parts();
  for (Exponents& e : out) ++e.b;
  return trusted_partition(std::move(out));
}

RawMultiset map_one(const Partition& pt, const PQSystem& sys) {
  RawMultiset out;
  if (!sys.has_binary_base()) {
    out = values_of(pt, sys);
    out.values.emplace_back(1);
    return out;
  }
  auto [rest, amount] = split_binary(pt, sys);
  std::vector<Exponents> bits;
  append_bits(bits, amount + 1, sys);
  for (Exponents e : rest) out.values.push_back(part_value(e, sys));
  for (Exponents e : bits) out.values.push_back(part_value(e, sys));
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

std::optional<Partition> try_map_one(const Partition& pt, const PQSystem& sys) {
  if (!sys.has_binary_base()) {
    if (!pt.empty() && pt.smallest() == Exponents{0, 0}) return std::nullopt;
    std::vector<Exponents> out = pt.parts();
    out.push_back({0, 0});
    return trusted_partition(std::move(out));
  }
  auto [out, amount] = split_binary(pt, sys);
  append_bits(out, amount + 1, sys);
  if (!is_chain(out)) return std::nullopt;
  return trusted_partition(std::move(out));
}

std::optional<Partition> try_unmap_one(const Partition& pt, const PQSystem& sys) {
  if (!sys.has_binary_base()) {
    if (pt.empty() || pt.smallest() != Exponents{0, 0}) return std::nullopt;
    std::vector<Exponents> out = pt.parts();
    out.pop_back();
    return trusted_partition(std::move(out));
  }
  auto [out, amount] = split_binary(pt, sys);
  if (sgn(amount) == 0) return std::nullopt;
  append_bits(out, amount - 1, sys);
  if (!is_chain(out)) return std::nullopt;
  return trusted_partition(std::move(out));
}

Nat binary_amount(const Partition& pt, const PQSystem& sys) {
  require_binary(sys, "binary amount");
  return split_binary(pt, sys).second;
}

Partition binary_partition(const Nat& U, const PQSystem& sys) {
  require_binary(sys, "binary partition");
  std::vector<Exponents> out;
  append_bits(out, U, sys);
  return trusted_partition(std::move(out));
}

Limits Limits::from_environment() {
  Limits limits;
  if (const char* env = std::getenv("CHAINPART_CEILING")) {
    std::string_view text(env);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw DomainError("CHAINPART_CEILING must be a nonnegative integer");
    }
    limits.enumeration_ceiling = v;
  }
  return limits;
}

namespace {

struct SmoothPart {
  std::uint64_t value;
  Exponents exps;
};

class BruteForce {
 public:
  BruteForce(std::uint64_t total, const PQSystem& sys) : slack_(sys.min_base() - 1) {
    for (std::uint64_t pa = 1, a = 0; pa <= total; pa *= sys.p(), ++a) {
      for (std::uint64_t v = pa, b = 0; v <= total; v *= sys.q(), ++b) {
        parts_.push_back({v, {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}});
        if (v > total / sys.q()) break;
      }
      if (pa > total / sys.p()) break;
    }
    std::sort(parts_.begin(), parts_.end(), [](const auto& l, const auto& r) { return l.value > r.value; });
  }

  std::vector<Partition> run(std::uint64_t total) {
    if (total == 0) return {Partition{}};
    descend(total, std::nullopt);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  // Parts after v sum to less than v/(min(p,q)-1), which bounds what may remain.
  void descend(std::uint64_t remaining, std::optional<Exponents> above) {
    for (const SmoothPart& s : parts_) {
      if (s.value > remaining) continue;
      if (above && (!below_or_equal(s.exps, *above) || s.exps == *above)) continue;
      std::uint64_t rest = remaining - s.value;
      if (rest > 0 && rest >= (s.value + slack_ - 1) / slack_) continue;
      chain_.push_back(s.exps);
      if (rest == 0) {
        found_.push_back(trusted_partition(chain_));
      } else {
        descend(rest, s.exps);
      }
      chain_.pop_back();
    }
  }

  std::uint64_t slack_;
  std::vector<SmoothPart> parts_;
  std::vector<Exponents> chain_;
  std::vector<Partition> found_;
};

}  // namespace

std::vector<Partition> brute_force_enumerate(const Nat& U, const PQSystem& sys, const Limits& limits) {
  if (!fits_u64(U) || to_u64(U) > limits.enumeration_ceiling || to_u64(U) > (std::uint64_t{1} << 62)) {
    throw ResourceLimit("U = " + to_decimal(U) + " exceeds the brute-force enumeration ceiling of " +
                        std::to_string(limits.enumeration_ceiling));
  }
  std::uint64_t total = to_u64(U);
  return BruteForce(total, sys).run(total);
}

}  // namespace chainpart
