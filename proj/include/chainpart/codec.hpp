#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chainpart/core.hpp"

namespace chainpart {

// Generation-tree words (p = 2). Letters are read from the root U down to
// the leaf 1; decoding replays them backwards starting from the partition
// (1): One increments the binary amount, Two doubles every part, Q multiplies
// every part by q. The partition (1) itself is the empty word.

enum class Letter : std::uint8_t { One, Two, Q };
using TreeWord = std::vector<Letter>;

struct TreeDecoded {
  Nat value;
  Partition partition;
};

/// Throws DomainError when p != 2 or when a One letter breaks the chain.
TreeDecoded tree_decode(const TreeWord& word, const PQSystem& sys);

/// Path of pt in the p = 2 branch decomposition. Requires p = 2 and U >= 1.
TreeWord tree_encode(const Partition& pt, const PQSystem& sys);

/// Text form: digits "1", "2" and q when q < 10 ("1332"); otherwise letters
/// separated by '.', with Q written as "q" ("1.q.q.2").
std::string format_tree_word(const TreeWord& word, const PQSystem& sys);
TreeWord parse_tree_word(std::string_view text, const PQSystem& sys);

/// JSON-friendly symbols: "1", "2", "q".
std::vector<std::string> tree_word_symbols(const TreeWord& word);

// Lattice words over {0,1,2,3}. Walking the canonical filling path of the
// exponent chain from (0,0) (North before East), each point emits
//   0 not in chain, next step East     1 in chain, next step East
//   2 not in chain, next step North    3 in chain, next step North or last

/// Ends in 3 and contains neither "02" nor "12".
bool is_valid_lattice_word(std::string_view word);

/// Requires a nonempty partition.
std::string lattice_encode(const Partition& pt);

/// Throws DomainError on characters outside 0-3 or a word failing
/// is_valid_lattice_word.
Partition lattice_decode(std::string_view word);

/// No word is a (scattered) subsequence of another.
bool is_hypercode(const std::vector<TreeWord>& words);

/// No word is a contiguous factor of another.
bool is_infix_code(const std::vector<std::string>& words);

}  // namespace chainpart
