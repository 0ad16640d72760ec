#include <doctest.h>

#include <set>

#include "chainpart/codec.hpp"
#include "chainpart/enumerate.hpp"
#include "chainpart/graph23.hpp"
#include "chainpart/serialize.hpp"

using namespace chainpart;

namespace {

Partition of(std::initializer_list<unsigned long> vs, const PQSystem& sys) {
  RawMultiset m;
  for (auto v : vs) m.values.emplace_back(v);
  return validate(m, sys);
}

}  // namespace

TEST_SUITE("graph23") {
  TEST_CASE("moves at small U") {
    const auto s = make_system(2, 3);
    CHECK(neighbors(of({2, 1}, s), s) == std::vector<Partition>{of({3}, s)});
    CHECK(neighbors(of({3}, s), s) == std::vector<Partition>{of({2, 1}, s)});
    CHECK_FALSE(neighbors(of({16, 8, 2, 1}, s), s).empty());
    CHECK_THROWS_AS(neighbors(of({2, 1}, make_system(2, 5)), make_system(2, 5)), DomainError);
  }

  TEST_CASE("small graphs") {
    const auto s = make_system(2, 3);
    const Connectivity c3 = connectivity_check(Nat(3), s);
    CHECK(c3.connected);
    CHECK(c3.vertices == 2);
    CHECK(c3.edges == 1);
    const Connectivity c5 = connectivity_check(Nat(5), s);
    CHECK(c5.connected);
    CHECK(c5.vertices == 1);
    const Connectivity c27 = connectivity_check(Nat(27), s);
    CHECK(c27.connected);
    CHECK(c27.vertices == 7);
    CHECK(static_cast<double>(c27.diameter) <= diameter_bound(Nat(27)));
  }

  TEST_CASE("symmetry and closure") {
    const auto s = make_system(2, 3);
    DecompositionEnumerator e(s);
    for (unsigned u = 1; u <= 400; ++u) {
      const auto members = e.enumerate(Nat(u)).members;
      for (const Partition& v : members) {
        for (const Partition& n : neighbors(v, s)) {
          CHECK(value(n, s) == u);
          CHECK(is_chain(n.parts()));
          CHECK(std::binary_search(members.begin(), members.end(), n));
          const auto back = neighbors(n, s);
          CHECK(std::find(back.begin(), back.end(), v) != back.end());
        }
      }
    }
  }

  TEST_CASE("reduction to binary") {
    const auto s = make_system(2, 3);
    const auto path27 = reduce_to_binary(of({27}, s), s);
    REQUIRE_FALSE(path27.empty());
    CHECK(path27.back() == of({16, 8, 2, 1}, s));
    CHECK(static_cast<double>(path27.size()) <= diameter_bound(Nat(27)));
    CHECK(diameter_bound(Nat(27)) == doctest::Approx(14.3).epsilon(0.01));
    CHECK(reduce_to_binary(of({16, 8, 2, 1}, s), s).empty());
    const auto path19 = reduce_to_binary(of({18, 1}, s), s);
    CHECK(path19.back() == binary_partition(Nat(19), s));
    CHECK(static_cast<double>(path19.size()) <= 11.3);
    Partition cur = of({18, 1}, s);
    for (const Partition& next : path19) {
      const auto adj = neighbors(cur, s);
      CHECK(std::find(adj.begin(), adj.end(), next) != adj.end());
      cur = next;
    }
  }

  TEST_CASE("walks") {
    const auto s = make_system(2, 3);
    CHECK(random_walk(Nat(27), 0, 1, s) == binary_partition(Nat(27), s));
    for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(random_walk(Nat(5), 100, seed, s) == of({4, 1}, s));
    std::set<Partition> seen;
    for (std::uint64_t steps = 0; steps < 300; ++steps) seen.insert(random_walk(Nat(27), steps, 9, s));
    CHECK(seen.size() == 7);
    CHECK(random_walk(Nat(1000), 500, 4, s) == random_walk(Nat(1000), 500, 4, s));
  }

  TEST_CASE("graph export") {
    const auto s = make_system(2, 3);
    const TransitionGraph g = build_graph(Nat(3), s);
    const std::string dot = to_dot(g);
    CHECK(dot.find("graph G3 {") == 0);
    CHECK(dot.find(lattice_encode(of({3}, s))) != std::string::npos);
    CHECK(dot.find(lattice_encode(of({2, 1}, s))) != std::string::npos);
    Limits tight;
    tight.enumeration_ceiling = 10;
    CHECK_THROWS_AS(build_graph(Nat(11), s, tight), ResourceLimit);
  }
}
