#include <doctest.h>

#include "chainpart/codec.hpp"
#include "chainpart/enumerate.hpp"
#include "chainpart/serialize.hpp"

using namespace chainpart;

namespace {

Partition of(std::initializer_list<unsigned long> vs, const PQSystem& sys) {
  RawMultiset m;
  for (auto v : vs) m.values.emplace_back(v);
  return validate(m, sys);
}

}  // namespace

TEST_SUITE("codec") {
  TEST_CASE("tree words of 19") {
    const auto s = make_system(2, 3);
    struct Row {
      const char* word;
      std::initializer_list<unsigned long> parts;
    };
    for (const Row& r : {Row{"1332", {18, 1}}, Row{"1112222", {16, 2, 1}}, Row{"131122", {12, 6, 1}},
                         Row{"1112213", {12, 4, 2, 1}}}) {
      const TreeDecoded d = tree_decode(parse_tree_word(r.word, s), s);
      CHECK(d.value == 19);
      CHECK(d.partition == of(r.parts, s));
      CHECK(format_tree_word(tree_encode(of(r.parts, s), s), s) == r.word);
    }
  }

  TEST_CASE("tree word base cases") {
    const auto s = make_system(2, 3);
    CHECK(tree_encode(of({1}, s), s).empty());
    CHECK(tree_decode({}, s).partition == of({1}, s));
    CHECK(format_tree_word(tree_encode(of({2}, s), s), s) == "2");
    CHECK(format_tree_word(tree_encode(of({3}, s), s), s) == "3");
    CHECK(format_tree_word(tree_encode(of({2, 1}, s), s), s) == "12");
  }

  TEST_CASE("tree words for large q") {
    const auto s = make_system(2, 11);
    const TreeWord w{Letter::One, Letter::Q, Letter::Two};
    CHECK(format_tree_word(w, s) == "1.q.2");
    CHECK(parse_tree_word("1.q.2", s) == w);
    CHECK(tree_word_symbols(w) == std::vector<std::string>{"1", "q", "2"});
    CHECK(tree_decode(w, s).value == 23);
    CHECK_THROWS_AS(tree_decode(w, make_system(3, 5)), DomainError);
  }

  TEST_CASE("malformed tree words") {
    const auto s = make_system(2, 3);
    // (6,2,1) + 1 breaks the chain
    CHECK_THROWS_AS(tree_decode(parse_tree_word("111132", s), s), DomainError);
    CHECK_THROWS_AS(parse_tree_word("14", s), DomainError);
  }

  TEST_CASE("lattice words") {
    const auto s = make_system(2, 3);
    CHECK(lattice_encode(Partition::from_chain({{1, 1}, {0, 0}})) == "303");
    CHECK(lattice_encode(of({12, 4, 2, 1}, s)) == "1133");
    CHECK(lattice_encode(of({18, 1}, s)) == "3203");
    CHECK(lattice_encode(of({12, 6, 1}, s)) == "3013");
    CHECK(lattice_encode(of({16, 2, 1}, s)) == "11003");
    CHECK(lattice_decode("11003") == of({16, 2, 1}, s));
    CHECK(lattice_decode("2223") == of({27}, s));
    CHECK(lattice_decode("3013") == of({12, 6, 1}, s));
    CHECK(value(lattice_decode("1333"), s) == 27);
  }

  TEST_CASE("lattice grammar") {
    CHECK(is_valid_lattice_word("1333"));
    CHECK_FALSE(is_valid_lattice_word("023"));
    CHECK_FALSE(is_valid_lattice_word("123"));
    CHECK_FALSE(is_valid_lattice_word("1330"));
    CHECK_FALSE(is_valid_lattice_word(""));
    CHECK_FALSE(is_valid_lattice_word("13a3"));
    CHECK_THROWS_AS(lattice_decode("123"), DomainError);
    CHECK_THROWS_AS(lattice_decode("10"), DomainError);
  }

  TEST_CASE("codes over whole sets") {
    const auto s = make_system(2, 3);
    DecompositionEnumerator e(s);
    for (unsigned u = 1; u <= 300; ++u) {
      std::vector<TreeWord> tree;
      std::vector<std::string> lattice;
      for (const Partition& m : e.enumerate(Nat(u)).members) {
        tree.push_back(tree_encode(m, s));
        lattice.push_back(lattice_encode(m));
        CHECK(tree_decode(tree.back(), s).partition == m);
        CHECK(lattice_decode(lattice.back()) == m);
      }
      CHECK(is_hypercode(tree));
      CHECK(is_infix_code(lattice));
    }
    CHECK_FALSE(is_hypercode({{Letter::One, Letter::Two}, {Letter::One, Letter::Q, Letter::Two}}));
    CHECK_FALSE(is_infix_code({"303", "13033"}));
    CHECK(is_infix_code({"303", "3013"}));
  }

  TEST_CASE("lattice codec for other systems") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{{3, 4}, {5, 7}, {3, 2}}) {
      const auto s = make_system(p, q);
      DecompositionEnumerator e(s);
      for (unsigned u = 1; u <= 300; ++u) {
        std::vector<std::string> words;
        for (const Partition& m : e.enumerate(Nat(u)).members) {
          words.push_back(lattice_encode(m));
          CHECK(is_valid_lattice_word(words.back()));
          CHECK(lattice_decode(words.back()) == m);
        }
        CHECK(is_infix_code(words));
      }
    }
  }
}
