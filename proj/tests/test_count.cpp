#include <doctest.h>

#include "chainpart/count.hpp"
#include "oracle.hpp"

using namespace chainpart;

TEST_SUITE("count") {
  TEST_CASE("frozen values for (2,3)") {
    const auto s = make_system(2, 3);
    struct Row {
      unsigned U, W;
    };
    // W from the naive oracle.
    for (Row r : {Row{0, 1}, Row{1, 1}, Row{19, 4}, Row{27, 7}, Row{12, 3}, Row{13, 3}, Row{26, 3}, Row{10, 3},
                  Row{21, 5}, Row{5, 1}, Row{11, 1}, Row{23, 1}, Row{9, 4}, Row{8, 2}, Row{4, 2}}) {
      REQUIRE(oracle::count(r.U, 2, 3) == r.W);
      CHECK(w_general(Nat(r.U), s) == r.W);
      CHECK(w_p2(Nat(r.U), s) == r.W);
      CHECK(w_digit_sum(Nat(r.U), s) == r.W);
    }
    CHECK(w_general(Nat(7), make_system(3, 5)) == 0);
    CHECK(w_digit_sum(Nat(7), make_system(3, 5)) == 0);
  }

  TEST_CASE("engines agree with the oracle") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{2, 3}, {2, 5}, {2, 7}, {3, 2}, {3, 4}, {3, 5}, {4, 3}, {5, 7}}) {
      const auto s = make_system(p, q);
      GeneralCounter general(s);
      DigitSumCounter digits(s);
      DigitSumCounter plain(s, {false, false});
      for (unsigned u = 0; u <= 160; ++u) {
        const auto want = oracle::count(u, p, q);
        CHECK_MESSAGE(general.count(u) == want, "U = ", u, " (", p, ",", q, ")");
        CHECK_MESSAGE(digits.count(u) == want, "U = ", u, " (", p, ",", q, ")");
        CHECK_MESSAGE(plain.count(u) == want, "U = ", u, " (", p, ",", q, ")");
      }
      if (p == 2) {
        BinaryCounter binary(s);
        for (unsigned u = 0; u <= 160; ++u) CHECK(binary.count(u) == oracle::count(u, p, q));
      }
    }
    CHECK_THROWS_AS(BinaryCounter(make_system(3, 2)), DomainError);
  }

  TEST_CASE("engines agree on large arguments") {
    const auto s = make_system(2, 3);
    const Nat big = power(2, 90) * 3 + power(3, 40) + 12345;
    const Nat w = w_general(big, s);
    CHECK(w_p2(big, s) == w);
    CHECK(w_digit_sum(big, s) == w);
    CHECK(w_general(power(2, 70) * 3 - 1, s) == 1);
  }

  TEST_CASE("identities") {
    const auto s = make_system(2, 3);
    GeneralCounter w(s);
    for (unsigned u = 1; u <= 3000; ++u) {
      CHECK(w.count(6 * u) == w.count(6 * u + 1));
      CHECK(w.count(6 * u) == w.count(2 * u) + w.count(3 * u) - w.count(u));
      CHECK(w.count(u) == w.star(Nat(u)) + w.star(Nat(u - 1)));
    }
    CHECK(w.count(13) == w.count(4) + w.count(5));
    CHECK(w.count(26) == w.count(13));
    CHECK(w.star(Nat(0)) == 1);
    CHECK(w.star(Nat(3)) == 1);
    CHECK(w_star(Nat(12), s) == 3);
  }

  TEST_CASE("digit indicator") {
    for (unsigned n = 0; n <= 200; ++n) CHECK(w_digit(Nat(n), 2) == 1);
    CHECK(w_digit(Nat(4), 3) == 1);
    CHECK(w_digit(Nat(256), 3) == 1);
    CHECK(w_digit(Nat(2), 3) == 0);
    CHECK(w_digit(Nat(10), 3) == 1);
    CHECK(w_digit(Nat(0), 7) == 1);
  }

  TEST_CASE("delta and the gap") {
    const auto s = make_system(2, 3);
    CHECK(delta(0, Nat(19), s) == 1);
    CHECK(delta(1, Nat(19), s) == 0);
    CHECK(delta(2, Nat(19), s) == 1);
    for (unsigned a = 1; a <= 12; ++a) {
      for (unsigned c = 0; 2 * a >= c + 2; ++c) CHECK(delta(c, power(4, a), s) == (c % 2 == 0 ? 1 : 0));
    }
    CHECK(few_gap(s) == 1);
    CHECK(few_gap(make_system(3, 2)) == 0);
    CHECK(few_gap(make_system(2, 5)) == 1);
    CHECK(few_gap(make_system(2, 9)) == 2);
    // no two nonzero summands closer than the gap
    for (auto [p, q] : std::vector<std::pair<long, long>>{{2, 3}, {2, 9}, {3, 11}}) {
      const auto sys = make_system(p, q);
      const unsigned gap = few_gap(sys);
      for (unsigned u = 0; u <= 5000; ++u) {
        unsigned last = UINT32_MAX;
        for (unsigned c = 0; c < 14; ++c) {
          if (!delta(c, Nat(u), sys)) continue;
          if (last != UINT32_MAX) CHECK(c - last > gap);
          last = c;
        }
      }
    }
    DigitSumCounter counter(s);
    CHECK(counter.active_terms(Nat(19)) == std::vector<unsigned>{0, 2});
  }

  TEST_CASE("corrupted table propagates") {
    const auto s = make_system(2, 3);
    GeneralCounter w(s);
    w.table().inject_for_testing(Nat(19), Nat(5));
    CHECK(w.count(19) == 5);
    CHECK(w.count(57) != oracle::count(57, 2, 3));
  }

  TEST_CASE("methods by name") {
    CHECK(parse_count_method("p2") == CountMethod::P2);
    CHECK(to_string(CountMethod::DigitSum) == "theorem2");
    CHECK_THROWS_AS(parse_count_method("fast"), DomainError);
    CHECK(count_range(30, make_system(2, 3)).size() == 31);
  }
}
