#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "chainpart/core.hpp"
#include "chainpart/memo.hpp"

namespace chainpart {

/// Memoized W(U). W(0) = W(1) = 1; arguments that are not integers are
/// handled by the callers as the zero count.
class CountTable {
 public:
  const Nat* find(const Nat& U) const { return memo_.find(U); }
  std::size_t size() const { return memo_.size(); }
  MemoTable<Nat>& memo() { return memo_; }

  /// Overwrites an entry. Exists so tests can check that corrupted tables
  /// are caught downstream.
  void inject_for_testing(const Nat& U, const Nat& count) { memo_.insert(U, count); }

 private:
  MemoTable<Nat> memo_;
};

enum class CountMethod { General, P2, DigitSum };

std::string to_string(CountMethod m);
CountMethod parse_count_method(const std::string& name);

/// A W(U) engine with its own table. Not thread-safe; give each worker its
/// own instance.
class Counter {
 public:
  explicit Counter(const PQSystem& sys) : sys_(sys) {}
  virtual ~Counter() = default;
  Counter(const Counter&) = delete;
  Counter& operator=(const Counter&) = delete;

  const PQSystem& system() const { return sys_; }
  CountTable& table() { return table_; }

  virtual Nat count(const Nat& U) = 0;
  Nat count(std::uint64_t U) { return count(from_u64(U)); }

  /// W*(U) = W(U/p) + W(U/q) - W(U/pq); W*(0) = 1.
  Nat star(const Nat& U);

 protected:
  /// W at an exact quotient U/d, zero when d does not divide U.
  Nat count_quotient(const Nat& U, unsigned long d);

  PQSystem sys_;
  CountTable table_;
};

/// W(pqU) = W(pqU+1) = W(pU) + W(qU) - W(U) and the residue table for
/// W(pqU+r), 1 < r < pq.
class GeneralCounter final : public Counter {
 public:
  using Counter::Counter;
  using Counter::count;
  Nat count(const Nat& U) override;
};

/// p = 2 identities: W(qU) = W(U) + W(qU-1), the W(qU+1) parity split (or
/// its q = 3 form), and W(qU+r) = W(floor((qU+r)/2)) for 2 <= r < q.
class BinaryCounter final : public Counter {
 public:
  explicit BinaryCounter(const PQSystem& sys);
  using Counter::count;
  Nat count(const Nat& U) override;
};

/// Stratification by p-ary amount:
///   W(U) = W_p(U) + W(U/q) + sum_c delta(c,U) W(floor(U/(p^c q))).
class DigitSumCounter final : public Counter {
 public:
  struct Options {
    /// Stop the c-loop once the low digits of U leave {0,1}.
    bool digit_exit = true;
    /// After a nonzero summand skip the next few_gap(sys) values of c.
    bool gap_skip = true;
  };

  explicit DigitSumCounter(const PQSystem& sys) : Counter(sys) {}
  DigitSumCounter(const PQSystem& sys, Options opts) : Counter(sys), opts_(opts) {}
  using Counter::count;
  Nat count(const Nat& U) override;

  /// The values of c whose summand is nonzero for this U.
  std::vector<unsigned> active_terms(const Nat& U) const;

 private:
  Options opts_;
};

std::unique_ptr<Counter> make_counter(CountMethod method, const PQSystem& sys);

/// One-shot helpers; each builds a fresh table.
Nat w_general(const Nat& U, const PQSystem& sys);
Nat w_p2(const Nat& U, const PQSystem& sys);
Nat w_digit_sum(const Nat& U, const PQSystem& sys);
Nat w_star(const Nat& U, const PQSystem& sys);

/// 1 iff n has only digits 0 and 1 in the given base.
int w_digit(const Nat& n, unsigned long base);

/// 1 iff floor(U/p^c) = 1 (mod q) and W_p(U mod p^c) = 1.
int delta(unsigned c, const Nat& U, const PQSystem& sys);

/// floor(log_p(q - (q-1)/p)) for p < q: a nonzero delta(c,U) forces
/// delta(c+k,U) = 0 for 0 < |k| <= this value. Zero when p > q.
unsigned few_gap(const PQSystem& sys);

/// W(0..limit) from a GeneralCounter, for scans.
std::vector<Nat> count_range(std::uint64_t limit, const PQSystem& sys);

}  // namespace chainpart
