#include "chainpart/enumerate.hpp"

#include <algorithm>

namespace chainpart {

DecompositionMode default_mode(const PQSystem& sys) {
  return sys.p() == 2 ? DecompositionMode::Binary : DecompositionMode::General;
}

std::vector<Branch> decompose(const Nat& U, const PQSystem& sys, DecompositionMode mode) {
  using enum Step;
  if (U < 2) throw DomainError("decompose needs U >= 2");
  if (mode == DecompositionMode::Binary && sys.p() != 2) {
    throw DomainError("the binary decomposition needs p = 2");
  }
  const unsigned long p = sys.p(), q = sys.q(), k0 = sys.k0(), l0 = sys.l0();
  const Nat V = floor_div(U, sys.pq());
  const unsigned long r = mod_ui(U, sys.pq());
  if (mode == DecompositionMode::Binary) {
    if (r == 0) return {{{TimesQ}, 2 * V}, {{Unit}, U - 1}};
    if (r == 1) return {{{Unit}, U - 1}};
  }
  if (r == 0) return {{{TimesP}, q * V}, {{TimesQ}, p * V, true}};
  if (r == 1) return {{{Unit, TimesP}, q * V}, {{Unit, TimesQ}, p * V, true}};
  if (r == k0 * p) return {{{TimesP}, q * V + k0}, {{Unit, TimesQ}, p * V + (p - l0)}};
  if (r == l0 * q) return {{{TimesQ}, p * V + l0}, {{Unit, TimesP}, q * V + (q - k0)}};
  if (r % p == 0) return {{{TimesP}, q * V + r / p}};
  if (r % p == 1) return {{{Unit, TimesP}, q * V + r / p}};
  if (r % q == 0) return {{{TimesQ}, p * V + r / q}};
  if (r % q == 1) return {{{Unit, TimesQ}, p * V + r / q}};
  return {};
}

Partition apply_branch(const Branch& branch, const Partition& child, const PQSystem& sys) {
  Partition pt = child;
  for (auto it = branch.steps.rbegin(); it != branch.steps.rend(); ++it) {
    switch (*it) {
      case Step::TimesP: pt = map_p(pt); break;
      case Step::TimesQ: pt = map_q(pt); break;
      case Step::Unit: {
        auto next = try_map_one(pt, sys);
        if (!next) throw InvariantViolation("unit step broke the chain condition");
        pt = std::move(*next);
        break;
      }
    }
  }
  return pt;
}

std::optional<Partition> strip_branch(const Branch& branch, const Partition& pt, const PQSystem& sys) {
  Partition cur = pt;
  for (Step s : branch.steps) {
    if (s == Step::Unit) {
      auto prev = try_unmap_one(cur, sys);
      if (!prev) return std::nullopt;
      cur = std::move(*prev);
      continue;
    }
    std::vector<Exponents> parts = cur.parts();
    for (Exponents& e : parts) {
      std::uint32_t& x = s == Step::TimesP ? e.a : e.b;
      if (x == 0) return std::nullopt;
      --x;
    }
    cur = trusted_partition(std::move(parts));
  }
  if (branch.exclude_p_multiples && !cur.empty() && cur.smallest().a > 0) return std::nullopt;
  return cur;
}

namespace {

using Members = std::shared_ptr<const std::vector<Partition>>;

Members make_members(std::vector<Partition> v) { return std::make_shared<const std::vector<Partition>>(std::move(v)); }

void charge(std::uint64_t& stored, std::size_t n, const Limits& limits) {
  stored += n;
  if (stored > limits.memory_budget) {
    throw ResourceLimit("enumeration memo exceeds the budget of " + std::to_string(limits.memory_budget) +
                        " partitions");
  }
}

}  // namespace

OmegaSet GeneralEnumerator::enumerate(const Nat& U) {
  const unsigned long p = sys_.p(), q = sys_.q();
  auto star_args = [&](const Nat& v, std::vector<Nat>& out) {
    if (auto x = exact_div(v, p)) out.push_back(*x);
    if (auto x = exact_div(v, q)) out.push_back(*x);
  };
  auto deps = [&](const Nat& u) {
    std::vector<Nat> out;
    if (sgn(u) == 0) return out;
    star_args(u, out);
    if (u > 1) star_args(u - 1, out);
    return out;
  };
  auto combine = [&](const Nat& u, const auto& lookup) -> Members {
    if (sgn(u) == 0) return make_members({Partition{}});
    // Ω*(v); Ω*(0) holds the empty partition.
    auto star = [&](const Nat& v) {
      std::vector<Partition> out;
      if (sgn(v) == 0) {
        out.emplace_back();
        return out;
      }
      if (auto x = exact_div(v, p)) {
        for (const Partition& m : *lookup(*x)) out.push_back(map_p(m));
      }
      if (auto x = exact_div(v, q)) {
        for (const Partition& m : *lookup(*x)) out.push_back(map_q(m));
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    };
    std::vector<Partition> members = star(u);
    for (const Partition& m : star(u - 1)) {
      auto next = try_map_one(m, sys_);
      if (!next) throw InvariantViolation("adding a part 1 to a partition without one failed");
      members.push_back(std::move(*next));
    }
    std::sort(members.begin(), members.end());
    charge(stored_, members.size(), limits_);
    return make_members(std::move(members));
  };
  const Members& result = evaluate(memo_, U, deps, combine);
  return {U, *result};
}

DecompositionEnumerator::DecompositionEnumerator(const PQSystem& sys, DecompositionMode mode, Limits limits)
    : sys_(sys), mode_(mode), limits_(limits) {
  if (mode == DecompositionMode::Binary && sys.p() != 2) {
    throw DomainError("the binary decomposition needs p = 2");
  }
}

OmegaSet DecompositionEnumerator::enumerate(const Nat& U) {
  auto deps = [&](const Nat& u) {
    std::vector<Nat> out;
    if (u < 2) return out;
    for (Branch& b : decompose(u, sys_, mode_)) out.push_back(std::move(b.child));
    return out;
  };
  auto combine = [&](const Nat& u, const auto& lookup) -> Members {
    if (sgn(u) == 0) return make_members({Partition{}});
    if (u == 1) return make_members({trusted_partition({{0, 0}})});
    std::vector<Partition> members;
    for (const Branch& b : decompose(u, sys_, mode_)) {
      for (const Partition& m : *lookup(b.child)) {
        if (b.exclude_p_multiples && m.smallest().a > 0) continue;
        members.push_back(apply_branch(b, m, sys_));
      }
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw InvariantViolation("branches of Ω(" + to_decimal(u) + ") overlap");
    }
    charge(stored_, members.size(), limits_);
    return make_members(std::move(members));
  };
  const Members& result = evaluate(memo_, U, deps, combine);
  return {U, *result};
}

OmegaSet enumerate_general(const Nat& U, const PQSystem& sys, const Limits& limits) {
  return GeneralEnumerator(sys, limits).enumerate(U);
}

OmegaSet enumerate_decomposed(const Nat& U, const PQSystem& sys, const Limits& limits) {
  return DecompositionEnumerator(sys, limits).enumerate(U);
}

UniformSampler::UniformSampler(const PQSystem& sys, std::uint64_t seed)
    : UniformSampler(sys, default_mode(sys), seed) {}

UniformSampler::UniformSampler(const PQSystem& sys, DecompositionMode mode, std::uint64_t seed)
    : sys_(sys), mode_(mode), counter_(sys), rng_(gmp_randinit_mt) {
  if (mode == DecompositionMode::Binary && sys.p() != 2) {
    throw DomainError("the binary decomposition needs p = 2");
  }
  rng_.seed(static_cast<unsigned long>(seed));
}

Nat UniformSampler::branch_weight(const Branch& b) {
  Nat w = counter_.count(b.child);
  if (b.exclude_p_multiples) w -= counter_.count(floor_div(b.child, sys_.p()));
  return w;
}

Partition UniformSampler::draw(const Nat& U) {
  if (sgn(counter_.count(U)) == 0) {
    throw DomainError("Ω(" + to_decimal(U) + ") is empty; nothing to sample");
  }
  return draw_member(U);
}

Partition UniformSampler::draw_member(const Nat& U) {
  if (sgn(U) == 0) return Partition{};
  if (U == 1) return trusted_partition({{0, 0}});
  std::vector<Branch> branches = decompose(U, sys_, mode_);
  std::vector<Nat> weights;
  Nat total = 0;
  for (const Branch& b : branches) {
    weights.push_back(branch_weight(b));
    total += weights.back();
  }
  if (total != counter_.count(U)) {
    throw InvariantViolation("branch weights of Ω(" + to_decimal(U) + ") do not add up to W(U)");
  }
  Nat pick = rng_.get_z_range(total);
  std::size_t chosen = 0;
  while (pick >= weights[chosen]) {
    pick -= weights[chosen];
    ++chosen;
  }
  const Branch& b = branches[chosen];
  Partition child = draw_member(b.child);
  while (b.exclude_p_multiples && child.smallest().a > 0) child = draw_member(b.child);
  return apply_branch(b, child, sys_);
}

Partition sample_uniform(const Nat& U, const PQSystem& sys, std::uint64_t seed) {
  return UniformSampler(sys, seed).draw(U);
}

}  // namespace chainpart
