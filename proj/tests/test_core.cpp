#include <doctest.h>

#include <set>

#include "chainpart/core.hpp"
#include "chainpart/memo.hpp"
#include "chainpart/serialize.hpp"
#include "oracle.hpp"

using namespace chainpart;

namespace {

oracle::Parts as_u64(const Partition& pt, const PQSystem& sys) {
  oracle::Parts out;
  for (const Nat& v : values_of(pt, sys).values) out.push_back(to_u64(v));
  return out;
}

RawMultiset raw(std::initializer_list<unsigned long> vs) {
  RawMultiset m;
  for (auto v : vs) m.values.emplace_back(v);
  return m;
}

InvalidPartition::Reason rejection(const RawMultiset& m, const PQSystem& sys) {
  try {
    validate(m, sys);
  } catch (const InvalidPartition& e) {
    return e.reason();
  }
  FAIL("accepted");
  return InvalidPartition::Reason::NonPositive;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("system parameters") {
    const auto s23 = make_system(2, 3);
    CHECK(s23.k0() == 2);
    CHECK(s23.l0() == 1);
    const auto s35 = make_system(3, 5);
    CHECK(s35.k0() == 2);
    CHECK(s35.l0() == 2);
    for (auto [p, q] : std::vector<std::pair<long, long>>{{2, 5}, {3, 4}, {5, 7}, {4, 9}, {7, 3}}) {
      const auto s = make_system(p, q);
      CHECK(s.k0() * s.p() % s.q() == 1);
      CHECK(s.l0() * s.q() % s.p() == 1);
      CHECK(s.k0() * s.p() - (s.p() - s.l0()) * s.q() == 1);
    }
    CHECK_THROWS_AS(make_system(2, 4), DomainError);
    CHECK_THROWS_AS(make_system(1, 3), DomainError);
    CHECK_THROWS_AS(make_system(3, 3), DomainError);
    CHECK_THROWS_AS(make_system(0, 5), DomainError);
  }

  TEST_CASE("value") {
    const auto s = make_system(2, 3);
    CHECK(value(Partition::from_chain({{1, 2}, {1, 1}, {1, 0}, {0, 0}}), s) == 27);
    CHECK(value(Partition{}, s) == 0);
    CHECK(value(Partition::from_chain({{4, 0}, {1, 0}, {0, 0}}), s) == 19);
    CHECK_THROWS_AS(Partition::from_chain({{1, 0}, {0, 1}}), InvalidPartition);
    CHECK_THROWS_AS(Partition::from_chain({{0, 0}, {1, 0}}), InvalidPartition);
  }

  TEST_CASE("validate") {
    const auto s = make_system(2, 3);
    CHECK(validate(raw({18, 6, 2, 1}), s) == Partition::from_chain({{1, 2}, {1, 1}, {1, 0}, {0, 0}}));
    CHECK(validate(raw({1, 18, 2, 6}), s).size() == 4);
    CHECK(rejection(raw({6, 4}), s) == InvalidPartition::Reason::ChainBreak);
    CHECK(rejection(raw({9, 6, 3}), s) == InvalidPartition::Reason::ChainBreak);
    CHECK(rejection(raw({5}), s) == InvalidPartition::Reason::NonSmooth);
    CHECK(rejection(raw({2, 2}), s) == InvalidPartition::Reason::Duplicate);
    CHECK(rejection(raw({0}), s) == InvalidPartition::Reason::NonPositive);
    for (const Partition& pt : brute_force_enumerate(Nat(60), s)) CHECK(validate(values_of(pt, s), s) == pt);
  }

  TEST_CASE("maps") {
    const auto s = make_system(2, 3);
    const auto two_one = Partition::from_chain({{1, 0}, {0, 0}});
    CHECK(as_u64(map_q(two_one), s) == oracle::Parts{6, 3});
    CHECK(map_p(Partition{}).empty());
    CHECK(as_u64(map_p(validate(raw({9, 3}), s)), s) == oracle::Parts{18, 6});

    const auto six_two_one = validate(raw({6, 2, 1}), s);
    std::vector<unsigned long> got;
    for (const Nat& v : map_one(six_two_one, s).values) got.push_back(v.get_ui());
    CHECK(got == std::vector<unsigned long>{6, 4});
    CHECK_FALSE(try_map_one(six_two_one, s).has_value());
    CHECK(as_u64(*try_map_one(validate(raw({16}), s), s), s) == oracle::Parts{16, 1});

    const auto s53 = make_system(5, 3);
    got.clear();
    for (const Nat& v : map_one(validate(raw({3, 1}), s53), s53).values) got.push_back(v.get_ui());
    CHECK(got == std::vector<unsigned long>{3, 1, 1});
    CHECK_FALSE(try_map_one(validate(raw({3, 1}), s53), s53).has_value());
    CHECK(as_u64(*try_map_one(validate(raw({3}), s53), s53), s53) == oracle::Parts{3, 1});

    for (unsigned u = 1; u <= 80; ++u) {
      for (const Partition& pt : brute_force_enumerate(Nat(u), s)) {
        CHECK(value(map_p(pt), s) == 2 * u);
        CHECK(value(map_q(pt), s) == 3 * u);
        if (auto next = try_map_one(pt, s)) {
          CHECK(value(*next, s) == u + 1);
          CHECK(try_unmap_one(*next, s) == pt);
        }
      }
    }
  }

  TEST_CASE("binary amount") {
    const auto s = make_system(2, 3);
    CHECK(binary_amount(validate(raw({12, 4, 2, 1}), s), s) == 7);
    CHECK(binary_amount(validate(raw({9, 3}), s), s) == 0);
    CHECK(binary_amount(validate(raw({16, 2, 1}), s), s) == 19);
    const auto s32 = make_system(3, 2);
    CHECK(binary_amount(validate(raw({12, 4, 2, 1}), s32), s32) == 7);
    CHECK_THROWS_AS(binary_amount(Partition{}, make_system(3, 5)), DomainError);
    CHECK(as_u64(binary_partition(Nat(27), s), s) == oracle::Parts{16, 8, 2, 1});
  }

  TEST_CASE("brute force matches the naive oracle") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}, {5, 2}}) {
      const auto s = make_system(p, q);
      for (unsigned u = 0; u <= 150; ++u) {
        std::set<oracle::Parts> want;
        for (const auto& c : oracle::chains(u, p, q)) want.insert(c);
        std::set<oracle::Parts> got;
        for (const Partition& pt : brute_force_enumerate(Nat(u), s)) {
          CHECK(value(pt, s) == u);
          got.insert(as_u64(pt, s));
        }
        CHECK_MESSAGE(got == want, "U = ", u, " (", p, ",", q, ")");
      }
    }
    const auto s = make_system(2, 3);
    CHECK(brute_force_enumerate(Nat(19), s).size() == 4);
    CHECK(brute_force_enumerate(Nat(0), s) == std::vector<Partition>{Partition{}});
    CHECK(brute_force_enumerate(Nat(27), s).size() == 7);
    CHECK(brute_force_enumerate(Nat(7), make_system(3, 5)).empty());
  }

  TEST_CASE("enumeration ceiling") {
    Limits tight;
    tight.enumeration_ceiling = 100;
    CHECK_THROWS_AS(brute_force_enumerate(Nat(101), make_system(2, 3), tight), ResourceLimit);
    CHECK(brute_force_enumerate(Nat(100), make_system(2, 3), tight).size() > 0);
  }

  TEST_CASE("serialization") {
    const auto s = make_system(2, 3);
    const auto pt = validate(raw({18, 1}), s);
    CHECK(to_json(pt, s) == R"({"p":2,"q":3,"parts":[[1,2],[0,0]],"sum":"19"})");
    CHECK(to_json(pt, s, true) == R"({"p":2,"q":3,"parts":[[1,2],[0,0]],"values":["18","1"],"sum":"19"})");
    CHECK(partition_from_json(to_json(pt, s), s) == pt);
    CHECK(to_json(Partition{}, s) == R"({"p":2,"q":3,"parts":[],"sum":"0"})");
    CHECK(to_sum_string(pt, s) == "18+1");
    CHECK(to_sum_string(Partition{}, s) == "0");
    CHECK_THROWS_AS(partition_from_json(R"({"p":2,"q":3,"parts":[[1,2],[0,0]],"sum":"20"})", s), DomainError);
    CHECK_THROWS_AS(partition_from_json(R"({"p":2,"q":5,"parts":[[0,0]],"sum":"1"})", s), DomainError);
    CHECK_THROWS_AS(partition_from_json(R"({"p":2,"q":3,"parts":[[1,0],[0,1]],"sum":"5"})", s), DomainError);
  }

  TEST_CASE("memo table") {
    MemoTable<int> memo;
    memo.insert(Nat(1'000'000), 7);  // far past the dense end: stored sparsely
    memo.insert(power(2, 100), 9);
    for (int k = 0; k < 1'500'000; ++k) {
      if (k != 1'000'000) memo.insert(Nat(k), k % 5);
    }
    CHECK(memo.size() == 1'500'001);
    REQUIRE(memo.find(Nat(1'000'000)) != nullptr);
    CHECK(*memo.find(Nat(1'000'000)) == 7);
    CHECK(*memo.find(power(2, 100)) == 9);
    CHECK(*memo.find(Nat(123'456)) == 123'456 % 5);
    CHECK(memo.find(Nat(1'500'000)) == nullptr);
    memo.insert(Nat(1'000'000), 8);
    CHECK(*memo.find(Nat(1'000'000)) == 8);
    CHECK(memo.size() == 1'500'001);
  }
}
