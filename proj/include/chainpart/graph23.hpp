#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chainpart/core.hpp"

namespace chainpart {

// Transition graph on Ω(U) for (p,q) = (2,3). Two move families, each with
// its inverse, act on the part 2^a 3^b having the largest a at some level b:
//   A  (2+1 = 3)  if 2^(a-1)3^b is also a part, both become 2^(a-1)3^(b+1);
//   B  otherwise, with C the run of parts 2^(a-i)3^b for i = 2..n and
//      c = a-2 (C empty) or a-n-1, when c >= 0 and no part 2^(c+1)3^d with
//      d < b exists: triple C, drop 2^a3^b, add 2^c3^b and 2^c3^(b+1).

/// Partitions reachable by one forward or inverse move, sorted.
std::vector<Partition> neighbors(const Partition& pt, const PQSystem& sys);

/// Moves from pt to the binary partition: at the highest 3-level b, take its
/// smallest part 2^a3^b and split it (3 = 1+2) when 2^a3^(b-1) is absent, or
/// undo a B move otherwise. The start vertex is not included.
std::vector<Partition> reduce_to_binary(const Partition& pt, const PQSystem& sys);

/// log^2(U) / (log 2 log 3).
double diameter_bound(const Nat& U);

struct TransitionGraph {
  Nat U;
  std::vector<Partition> vertices;  // sorted
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j
  std::vector<std::vector<std::size_t>> adjacency;
};

TransitionGraph build_graph(const Nat& U, const PQSystem& sys, const Limits& limits = {});

struct Connectivity {
  bool connected = false;
  std::size_t diameter = 0;  // exact, over all pairs; 0 when disconnected
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

Connectivity connectivity_check(const TransitionGraph& g);
Connectivity connectivity_check(const Nat& U, const PQSystem& sys, const Limits& limits = {});

/// Lazy walk from the binary partition: each step stays put with probability
/// 1/2, otherwise moves to a uniformly chosen neighbor. The stationary law is
/// proportional to degree, not uniform.
Partition random_walk(const Nat& U, std::uint64_t steps, std::uint64_t seed, const PQSystem& sys);

/// DOT text; vertices are labeled by their lattice words.
std::string to_dot(const TransitionGraph& g);

}  // namespace chainpart
