#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace chainpart {

/// Unbounded nonnegative integer used for sums, counts and moduli.
using Nat = mpz_class;

struct NatHash {
  std::size_t operator()(const Nat& n) const noexcept {
    const auto* raw = n.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(raw->_mp_size);
    if (raw->_mp_size != 0) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(raw, 0)) * 0x9E3779B97F4A7C15ull;
    }
    return h;
  }
};

inline std::string to_decimal(const Nat& n) { return n.get_str(10); }

/// Parses a decimal string; throws DomainError on anything else.
Nat parse_nat(std::string_view text);

inline Nat power(unsigned long base, unsigned long exponent) {
  Nat r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

inline bool divisible(const Nat& n, unsigned long d) {
  return mpz_divisible_ui_p(n.get_mpz_t(), d) != 0;
}

/// n / d when d divides n, nothing otherwise.
inline std::optional<Nat> exact_div(const Nat& n, unsigned long d) {
  if (!divisible(n, d)) return std::nullopt;
  Nat r;
  mpz_divexact_ui(r.get_mpz_t(), n.get_mpz_t(), d);
  return r;
}

inline Nat floor_div(const Nat& n, unsigned long d) {
  Nat r;
  mpz_fdiv_q_ui(r.get_mpz_t(), n.get_mpz_t(), d);
  return r;
}

inline unsigned long mod_ui(const Nat& n, unsigned long d) {
  return mpz_fdiv_ui(n.get_mpz_t(), d);
}

inline bool fits_u64(const Nat& n) {
  return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

/// Requires fits_u64(n).
inline std::uint64_t to_u64(const Nat& n) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof out, 0, 0, n.get_mpz_t());
  return out;
}

inline Nat from_u64(std::uint64_t v) {
  Nat r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

}  // namespace chainpart
