#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "chainpart/serialize.hpp"
#include "chainpart/shortest.hpp"
#include "oracle.hpp"

using namespace chainpart;

TEST_SUITE("shortest") {
  TEST_CASE("spot values") {
    const auto s = make_system(2, 3);
    const SigmaResult r = sigma(Nat(19), s);
    CHECK(r.sigma == 2);
    CHECK(to_sum_string(r.witness, s) == "18+1");
    CHECK(sigma(Nat(23), s).sigma == 4);
    ShortestSolver solver(s);
    for (unsigned a = 0; a <= 40; ++a) {
      CHECK(solver.length(power(2, a) * 3 - 1) == a + 1);
      CHECK(solver.length(power(2, a) * 3) == 1u);
    }
  }

  TEST_CASE("oracle minima") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
      const auto s = make_system(p, q);
      ShortestSolver solver(s);
      for (unsigned u = 1; u <= 200; ++u) {
        const std::size_t want = oracle::shortest(u, p, q);
        const auto got = solver.length(Nat(u));
        if (want == SIZE_MAX) {
          CHECK_FALSE(got.has_value());
          CHECK_THROWS_AS(solver.solve(Nat(u)), DomainError);
          continue;
        }
        REQUIRE(got.has_value());
        CHECK_MESSAGE(*got == want, "U = ", u, " (", p, ",", q, ")");
        const SigmaResult r = solver.solve(Nat(u));
        CHECK(r.witness.size() == want);
        CHECK(value(r.witness, s) == u);
      }
    }
  }

  TEST_CASE("recurrences") {
    const auto s = make_system(2, 3);
    ShortestSolver solver(s);
    for (unsigned u = 1; u <= 20000; ++u) {
      const unsigned s6 = *solver.length(Nat(6 * u));
      CHECK(s6 == std::min(*solver.length(Nat(3 * u)), *solver.length(Nat(2 * u))));
      CHECK(*solver.length(Nat(6 * u + 1)) == s6 + 1);
      CHECK(*solver.length(Nat(u)) <= static_cast<unsigned>(__builtin_popcount(u)));
    }
  }

  TEST_CASE("statistics") {
    const auto s = make_system(2, 3);
    const SigmaStats st = sigma_stats(10, s);
    CHECK(st.samples == 9);
    std::map<unsigned, std::uint64_t> want;
    double sum = 0;
    for (unsigned u = 2; u <= 10; ++u) {
      const auto m = oracle::shortest(u, 2, 3);
      ++want[m];
      sum += m / std::log2(u);
    }
    CHECK(st.histogram == want);
    CHECK(st.mean_ratio == doctest::Approx(sum / 9));
    CHECK(st.mean_scaled == doctest::Approx(4 * sum / 9));
    CHECK_THROWS_AS(sigma_stats(1, s), DomainError);
  }

  TEST_CASE("chain exponentiation") {
    const auto s = make_system(2, 3);
    const SigmaResult r = sigma(Nat(19), s);
    CHECK(chain_cost(r.witness) == ChainCost{1, 2, 1});
    CHECK(chain_pow(Nat(5), Nat(19), Nat(101), s) == oracle::pow_mod(5, 19, 101));
    CHECK(chain_pow(Nat(5), Nat(1), Nat(101), s) == 5);
    CHECK(chain_pow(Nat(5), Nat(0), Nat(101), s) == 1);
    CHECK_THROWS_AS(chain_pow(Nat(5), Nat(19), Nat(1), s), DomainError);

    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t g = rng() % 1'000'000'007, u = rng() % 10'000'000, m = 2 + rng() % 1'000'000'000;
      CHECK(chain_pow(from_u64(g), from_u64(u), from_u64(m), s) == from_u64(oracle::pow_mod(g, u, m)));
    }
    const auto s25 = make_system(2, 5);
    CHECK(chain_pow(Nat(3), Nat(1234567), Nat(1000003), s25) == oracle::pow_mod(3, 1234567, 1000003));
  }
}
