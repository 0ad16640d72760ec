#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chainpart/nat.hpp"

namespace chainpart {

/// Map from U to a cached value. The flat vector for small keys only doubles
/// once half of it is filled, so bottom-up scans stay dense while sparse
/// top-down recursions on large U land in the hash map.
template <class V>
class MemoTable {
 public:
  explicit MemoTable(std::uint64_t dense_cap = std::uint64_t{1} << 24) : dense_cap_(dense_cap) {}

  const V* find(const Nat& key) const {
    if (auto slot = dense_index(key); slot && *slot < known_.size() && known_[*slot]) return &dense_[*slot];
    if (sparse_.empty()) return nullptr;
    auto it = sparse_.find(key);
    return it == sparse_.end() ? nullptr : &it->second;
  }

  const V& insert(const Nat& key, V value) {
    if (auto slot = dense_index(key)) {
      if (*slot >= dense_.size()) {
        std::uint64_t grown = std::max<std::uint64_t>({*slot + 1, dense_.size() * 2, kMinDense});
        grown = std::min(grown, dense_cap_);
        dense_.resize(grown);
        known_.resize(grown, 0);
      }
      // the key may have been stored sparsely before the vector reached it
      if (!known_[*slot]) {
        ++dense_filled_;
        if (sparse_.erase(key) == 0) ++size_;
      }
      known_[*slot] = 1;
      dense_[*slot] = std::move(value);
      return dense_[*slot];
    }
    auto [it, fresh] = sparse_.insert_or_assign(key, std::move(value));
    if (fresh) ++size_;
    return it->second;
  }

  std::size_t size() const { return size_; }

 private:
  std::optional<std::uint64_t> dense_index(const Nat& key) const {
    if (!fits_u64(key)) return std::nullopt;
    std::uint64_t k = to_u64(key);
    if (k >= dense_cap_) return std::nullopt;
    if (k < std::max<std::uint64_t>(kMinDense, dense_.size())) return k;
    if (k < 2 * dense_.size() && 2 * dense_filled_ >= dense_.size()) return k;
    return std::nullopt;
  }

  static constexpr std::uint64_t kMinDense = 4096;

  std::uint64_t dense_cap_;
  std::vector<V> dense_;
  std::vector<std::uint8_t> known_;
  std::unordered_map<Nat, V, NatHash> sparse_;
  std::size_t size_ = 0;
  std::uint64_t dense_filled_ = 0;
};

/// Evaluates a memoized recurrence at `root` with an explicit work stack.
///
/// `deps(U)` lists the arguments whose values `combine(U, lookup)` will read;
/// both are called only for keys missing from the table. Deep chains such as
/// U = 2^k*3 - 1 never touch the call stack.
template <class V, class Deps, class Combine>
const V& evaluate(MemoTable<V>& memo, const Nat& root, Deps&& deps, Combine&& combine) {
  if (const V* hit = memo.find(root)) return *hit;
  auto lookup = [&memo](const Nat& key) -> const V& { return *memo.find(key); };
  std::vector<Nat> stack{root};
  while (!stack.empty()) {
    if (memo.find(stack.back())) {
      stack.pop_back();
      continue;
    }
    Nat u = stack.back();
    bool ready = true;
    for (Nat& d : deps(u)) {
      if (!memo.find(d)) {
        stack.push_back(std::move(d));
        ready = false;
      }
    }
    if (ready) {
      memo.insert(u, combine(u, lookup));
      stack.pop_back();
    }
  }
  return *memo.find(root);
}

}  // namespace chainpart
