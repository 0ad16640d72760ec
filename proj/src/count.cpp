#include "chainpart/count.hpp"

namespace chainpart {

namespace {

struct Term {
  Nat arg;
  int sign = 1;
};

// Right-hand side of the residue-class recurrence for U >= 2.
std::vector<Term> general_terms(const Nat& U, const PQSystem& sys) {
  const unsigned long p = sys.p(), q = sys.q(), k0 = sys.k0(), l0 = sys.l0();
  const Nat V = floor_div(U, sys.pq());
  const unsigned long r = mod_ui(U, sys.pq());
  if (r <= 1) return {{p * V, 1}, {q * V, 1}, {V, -1}};
  if (r == k0 * p) return {{q * V + k0}, {p * V + (p - l0)}};
  if (r == l0 * q) return {{p * V + l0}, {q * V + (q - k0)}};
  if (r % p <= 1) return {{q * V + r / p}};
  if (r % q <= 1) return {{p * V + r / q}};
  return {};
}

std::vector<Term> binary_terms(const Nat& U, const PQSystem& sys) {
  const unsigned long q = sys.q();
  const Nat V = floor_div(U, q);
  const unsigned long r = mod_ui(U, q);
  if (r == 0) return {{V}, {q * V - 1}};
  if (r == 1) {
    if (q == 3) return {{V}, {3 * floor_div(V + 1, 2) - 1}};
    if (divisible(V, 2)) return {{V}, {floor_div(q * V, 2) - 1}};
    return {{V}, {floor_div(q * V + 1, 2)}};
  }
  return {{floor_div(U, 2)}};
}

template <class TermsFn>
Nat evaluate_terms(MemoTable<Nat>& memo, const Nat& U, TermsFn terms) {
  auto deps = [&](const Nat& u) {
    std::vector<Nat> out;
    if (u < 2) return out;
    for (Term& t : terms(u)) out.push_back(std::move(t.arg));
    return out;
  };
  auto combine = [&](const Nat& u, const auto& lookup) -> Nat {
    if (u < 2) return Nat(1);
    Nat sum = 0;
    for (const Term& t : terms(u)) {
      if (t.sign > 0) {
        sum += lookup(t.arg);
      } else {
        sum -= lookup(t.arg);
      }
    }
    return sum;
  };
  return evaluate(memo, U, deps, combine);
}

}  // namespace

std::string to_string(CountMethod m) {
  switch (m) {
    case CountMethod::General: return "general";
    case CountMethod::P2: return "p2";
    case CountMethod::DigitSum: return "theorem2";
  }
  return "?";
}

CountMethod parse_count_method(const std::string& name) {
  if (name == "general") return CountMethod::General;
  if (name == "p2") return CountMethod::P2;
  if (name == "theorem2") return CountMethod::DigitSum;
  throw DomainError("unknown count method '" + name + "'");
}

Nat Counter::count_quotient(const Nat& U, unsigned long d) {
  auto quotient = exact_div(U, d);
  return quotient ? count(*quotient) : Nat(0);
}

Nat Counter::star(const Nat& U) {
  return count_quotient(U, sys_.p()) + count_quotient(U, sys_.q()) - count_quotient(U, sys_.pq());
}

Nat GeneralCounter::count(const Nat& U) {
  return evaluate_terms(table_.memo(), U, [this](const Nat& u) { return general_terms(u, sys_); });
}

BinaryCounter::BinaryCounter(const PQSystem& sys) : Counter(sys) {
  if (sys.p() != 2) throw DomainError("the p = 2 engine needs p = 2");
}

Nat BinaryCounter::count(const Nat& U) {
  return evaluate_terms(table_.memo(), U, [this](const Nat& u) { return binary_terms(u, sys_); });
}

std::vector<unsigned> DigitSumCounter::active_terms(const Nat& U) const {
  const unsigned long p = sys_.p(), q = sys_.q();
  const unsigned gap = opts_.gap_skip ? few_gap(sys_) : 0;
  std::vector<unsigned> active;
  Nat quotient = U;          // floor(U / p^c)
  bool low_digits_ok = true;  // W_p(U mod p^c)
  unsigned skip_until = 0;
  for (unsigned c = 0; quotient >= q + 1; ++c) {
    if (!low_digits_ok && opts_.digit_exit) break;
    if (low_digits_ok && c >= skip_until && mod_ui(quotient, q) == 1) {
      active.push_back(c);
      skip_until = c + gap + 1;
    }
    low_digits_ok = low_digits_ok && mod_ui(quotient, p) <= 1;
    quotient = floor_div(quotient, p);
  }
  return active;
}

Nat DigitSumCounter::count(const Nat& U) {
  const unsigned long p = sys_.p(), q = sys_.q();
  auto deps = [&](const Nat& u) {
    std::vector<Nat> out;
    if (sgn(u) == 0) return out;
    if (auto third = exact_div(u, q)) out.push_back(*third);
    for (unsigned c : active_terms(u)) out.push_back(floor_div(u, q) / power(p, c));
    return out;
  };
  auto combine = [&](const Nat& u, const auto& lookup) -> Nat {
    if (sgn(u) == 0) return Nat(1);
    Nat sum = w_digit(u, p);
    if (auto third = exact_div(u, q)) sum += lookup(*third);
    for (unsigned c : active_terms(u)) sum += lookup(floor_div(u, q) / power(p, c));
    return sum;
  };
  return evaluate(table_.memo(), U, deps, combine);
}

std::unique_ptr<Counter> make_counter(CountMethod method, const PQSystem& sys) {
  switch (method) {
    case CountMethod::General: return std::make_unique<GeneralCounter>(sys);
    case CountMethod::P2: return std::make_unique<BinaryCounter>(sys);
    case CountMethod::DigitSum: return std::make_unique<DigitSumCounter>(sys);
  }
  throw DomainError("unknown count method");
}

Nat w_general(const Nat& U, const PQSystem& sys) { return GeneralCounter(sys).count(U); }
Nat w_p2(const Nat& U, const PQSystem& sys) { return BinaryCounter(sys).count(U); }
Nat w_digit_sum(const Nat& U, const PQSystem& sys) { return DigitSumCounter(sys).count(U); }
Nat w_star(const Nat& U, const PQSystem& sys) { return GeneralCounter(sys).star(U); }

int w_digit(const Nat& n, unsigned long base) {
  if (base < 2) throw DomainError("digit base must be at least 2");
  Nat rest = n;
  while (sgn(rest) > 0) {
    if (mod_ui(rest, base) > 1) return 0;
    rest = floor_div(rest, base);
  }
  return 1;
}

int delta(unsigned c, const Nat& U, const PQSystem& sys) {
  const Nat scale = power(sys.p(), c);
  Nat high, low;
  mpz_fdiv_qr(high.get_mpz_t(), low.get_mpz_t(), U.get_mpz_t(), scale.get_mpz_t());
  return mod_ui(high, sys.q()) == 1 && w_digit(low, sys.p()) == 1 ? 1 : 0;
}

unsigned few_gap(const PQSystem& sys) {
  const unsigned long p = sys.p(), q = sys.q();
  if (p > q) return 0;
  // largest N with p^(N+1) <= pq - (q-1)
  const unsigned long limit = p * q - (q - 1);
  unsigned n = 0;
  for (unsigned long pw = p * p; pw <= limit; pw *= p) ++n;
  return n;
}

std::vector<Nat> count_range(std::uint64_t limit, const PQSystem& sys) {
  GeneralCounter counter(sys);
  std::vector<Nat> out;
  out.reserve(limit + 1);
  for (std::uint64_t u = 0; u <= limit; ++u) out.push_back(counter.count(u));
  return out;
}

}  // namespace chainpart
