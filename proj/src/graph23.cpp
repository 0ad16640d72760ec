#include "chainpart/graph23.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "chainpart/codec.hpp"
#include "chainpart/enumerate.hpp"

namespace chainpart {

namespace {

using Parts = std::vector<Exponents>;

void require_23(const PQSystem& sys) {
  if (sys.p() != 2 || sys.q() != 3) throw DomainError("the transition graph is defined for (p,q) = (2,3) only");
}

bool has(const Parts& parts, std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0) return false;
  Exponents e{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::find(parts.begin(), parts.end(), e) != parts.end();
}

void erase(Parts& parts, std::int64_t a, std::int64_t b) {
  Exponents e{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  parts.erase(std::find(parts.begin(), parts.end(), e));
}

void add(Parts& parts, std::int64_t a, std::int64_t b) {
  parts.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
}

std::optional<Partition> finish(Parts parts) {
  // A chain is strictly decreasing in a+b, so this order is the only candidate.
  std::sort(parts.begin(), parts.end(),
            [](Exponents l, Exponents r) { return std::uint64_t{l.a} + l.b > std::uint64_t{r.a} + r.b; });
  if (!is_chain(parts)) return std::nullopt;
  return trusted_partition(std::move(parts));
}

// Forward moves of both families, one per occupied 3-level.
std::vector<Partition> forward_moves(const Partition& pt) {
  const Parts& parts = pt.parts();
  std::vector<Partition> out;
  std::vector<std::uint32_t> levels;
  for (Exponents e : parts) levels.push_back(e.b);
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (std::int64_t b : levels) {
    std::int64_t a = -1;
    for (Exponents e : parts) {
      if (e.b == b) a = std::max<std::int64_t>(a, e.a);
    }
    Parts next = parts;
    if (has(parts, a - 1, b)) {
      erase(next, a, b);
      erase(next, a - 1, b);
      add(next, a - 1, b + 1);
    } else {
      std::int64_t n = 1;
      while (has(parts, a - (n + 1), b)) ++n;
      const std::int64_t c = a - n - 1;
      if (c < 0) continue;
      bool blocked = false;
      for (Exponents e : parts) blocked = blocked || (e.a == c + 1 && e.b < b);
      if (blocked) continue;
      for (std::int64_t i = 2; i <= n; ++i) {
        erase(next, a - i, b);
        add(next, a - i, b + 1);
      }
      erase(next, a, b);
      add(next, c, b);
      add(next, c, b + 1);
    }
    if (auto moved = finish(std::move(next))) out.push_back(std::move(*moved));
  }
  return out;
}

// Undo of a family-B move whose new parts are 2^c 3^b and 2^c 3^(b+1).
std::optional<Partition> undo_b(const Parts& parts, std::int64_t c, std::int64_t b) {
  std::int64_t top = c;
  while (has(parts, top + 1, b + 1)) ++top;
  Parts prev = parts;
  erase(prev, c, b);
  erase(prev, c, b + 1);
  for (std::int64_t x = c + 1; x <= top; ++x) {
    erase(prev, x, b + 1);
    add(prev, x, b);
  }
  if (has(prev, top + 2, b)) return std::nullopt;
  add(prev, top + 2, b);
  return finish(std::move(prev));
}

// Undo of a family-A move whose new part is 2^a 3^b.
std::optional<Partition> undo_a(const Parts& parts, std::int64_t a, std::int64_t b) {
  if (b == 0 || has(parts, a + 1, b - 1) || has(parts, a, b - 1)) return std::nullopt;
  Parts prev = parts;
  erase(prev, a, b);
  add(prev, a + 1, b - 1);
  add(prev, a, b - 1);
  return finish(std::move(prev));
}

bool moves_to(const Partition& from, const Partition& to) {
  auto f = forward_moves(from);
  return std::find(f.begin(), f.end(), to) != f.end();
}

}  // namespace

std::vector<Partition> neighbors(const Partition& pt, const PQSystem& sys) {
  require_23(sys);
  std::vector<Partition> out = forward_moves(pt);
  const Parts& parts = pt.parts();
  for (Exponents e : parts) {
    if (auto prev = undo_a(parts, e.a, e.b); prev && moves_to(*prev, pt)) out.push_back(std::move(*prev));
    if (has(parts, e.a, static_cast<std::int64_t>(e.b) + 1)) {
      if (auto prev = undo_b(parts, e.a, e.b); prev && moves_to(*prev, pt)) out.push_back(std::move(*prev));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Partition> reduce_to_binary(const Partition& pt, const PQSystem& sys) {
  require_23(sys);
  std::vector<Partition> path;
  Partition cur = pt;
  while (!cur.empty() && cur.largest().b > 0) {
    const std::int64_t b = cur.largest().b;
    std::int64_t a = INT64_MAX;
    for (Exponents e : cur.parts()) {
      if (e.b == b) a = std::min<std::int64_t>(a, e.a);
    }
    std::optional<Partition> next = has(cur.parts(), a, b - 1) ? undo_b(cur.parts(), a, b - 1)
                                                               : undo_a(cur.parts(), a, b);
    if (!next) throw InvariantViolation("no downward move from a non-binary partition");
    cur = std::move(*next);
    path.push_back(cur);
  }
  return path;
}

double diameter_bound(const Nat& U) {
  const double lu = std::log(U.get_d());
  return lu * lu / (std::log(2.0) * std::log(3.0));
}

TransitionGraph build_graph(const Nat& U, const PQSystem& sys, const Limits& limits) {
  require_23(sys);
  if (!fits_u64(U) || to_u64(U) > limits.enumeration_ceiling) {
    throw ResourceLimit("U = " + to_decimal(U) + " exceeds the enumeration ceiling");
  }
  TransitionGraph g;
  g.U = U;
  g.vertices = enumerate_decomposed(U, sys, limits).members;
  g.adjacency.resize(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (const Partition& n : neighbors(g.vertices[i], sys)) {
      auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), n);
      if (it == g.vertices.end() || *it != n) throw InvariantViolation("a move left Ω(U)");
      auto j = static_cast<std::size_t>(it - g.vertices.begin());
      g.adjacency[i].push_back(j);
      if (i < j) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

Connectivity connectivity_check(const TransitionGraph& g) {
  Connectivity out;
  out.vertices = g.vertices.size();
  out.edges = g.edges.size();
  if (g.vertices.empty()) return out;
  const std::size_t n = g.vertices.size();
  std::size_t diameter = 0;
  bool connected = true;
  std::vector<std::size_t> dist(n);
  for (std::size_t s = 0; s < n && connected; ++s) {
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    std::size_t reached = 1;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : g.adjacency[v]) {
        if (dist[w] != SIZE_MAX) continue;
        dist[w] = dist[v] + 1;
        diameter = std::max(diameter, dist[w]);
        ++reached;
        queue.push_back(w);
      }
    }
    connected = reached == n;
  }
  out.connected = connected;
  out.diameter = connected ? diameter : 0;
  return out;
}

Connectivity connectivity_check(const Nat& U, const PQSystem& sys, const Limits& limits) {
  return connectivity_check(build_graph(U, sys, limits));
}

Partition random_walk(const Nat& U, std::uint64_t steps, std::uint64_t seed, const PQSystem& sys) {
  require_23(sys);
  std::mt19937_64 rng(seed);
  Partition cur = binary_partition(U, sys);
  for (std::uint64_t i = 0; i < steps; ++i) {
    if (rng() & 1) continue;
    std::vector<Partition> next = neighbors(cur, sys);
    if (next.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
    cur = next[pick(rng)];
  }
  return cur;
}

std::string to_dot(const TransitionGraph& g) {
  std::string out = "graph G" + to_decimal(g.U) + " {\n";
  std::vector<std::string> labels;
  for (const Partition& v : g.vertices) {
    labels.push_back(v.empty() ? std::string("empty") : lattice_encode(v));
    out += "  \"" + labels.back() + "\";\n";
  }
  for (auto [i, j] : g.edges) out += "  \"" + labels[i] + "\" -- \"" + labels[j] + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace chainpart
