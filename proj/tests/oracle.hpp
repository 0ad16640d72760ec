#pragma once

// Naive reference implementations used to freeze expected values. They share
// no code with the library: plain 64-bit arithmetic and exhaustive search.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Parts = std::vector<std::uint64_t>;  // largest first

inline std::vector<std::uint64_t> smooth_upto(std::uint64_t n, std::uint64_t p, std::uint64_t q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 1; x <= n; x *= p) {
    for (std::uint64_t y = x; y <= n; y *= q) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every set of distinct {p,q}-smooth numbers summing to n in which each
/// element divides the next larger one.
inline std::vector<Parts> chains(std::uint64_t n, std::uint64_t p, std::uint64_t q) {
  const auto smooth = smooth_upto(n, p, q);
  std::vector<Parts> out;
  Parts cur;
  std::function<void(std::uint64_t)> go = [&](std::uint64_t rest) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (std::uint64_t s : smooth) {
      if (s > rest) break;
      if (!cur.empty() && (s >= cur.back() || cur.back() % s != 0)) continue;
      cur.push_back(s);
      go(rest - s);
      cur.pop_back();
    }
  };
  go(n);
  return out;
}

inline std::uint64_t count(std::uint64_t n, std::uint64_t p, std::uint64_t q) { return chains(n, p, q).size(); }

inline std::size_t shortest(std::uint64_t n, std::uint64_t p, std::uint64_t q) {
  std::size_t best = SIZE_MAX;
  for (const auto& c : chains(n, p, q)) best = std::min(best, c.size());
  return best;
}

/// Modular power by plain square-and-multiply.
inline std::uint64_t pow_mod(std::uint64_t g, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 result = 1 % m, base = g % m;
  for (; e; e >>= 1) {
    if (e & 1) result = result * base % m;
    base = base * base % m;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace oracle
