#include "chainpart/codec.hpp"

#include <algorithm>
#include <array>

#include "chainpart/enumerate.hpp"

namespace chainpart {

namespace {

void require_p2(const PQSystem& sys) {
  if (sys.p() != 2) throw DomainError("tree words need p = 2");
}

Letter letter_of(Step s) {
  switch (s) {
    case Step::Unit: return Letter::One;
    case Step::TimesP: return Letter::Two;
    case Step::TimesQ: return Letter::Q;
  }
  return Letter::One;
}

bool is_subsequence(const TreeWord& small, const TreeWord& big) {
  std::size_t i = 0;
  for (Letter l : big) {
    if (i < small.size() && small[i] == l) ++i;
  }
  return i == small.size();
}

std::array<std::size_t, 3> letter_counts(const TreeWord& w) {
  std::array<std::size_t, 3> c{};
  for (Letter l : w) ++c[static_cast<std::size_t>(l)];
  return c;
}

}  // namespace

TreeDecoded tree_decode(const TreeWord& word, const PQSystem& sys) {
  require_p2(sys);
  Partition pt = trusted_partition({{0, 0}});
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    switch (*it) {
      case Letter::Two: pt = map_p(pt); break;
      case Letter::Q: pt = map_q(pt); break;
      case Letter::One: {
        auto next = try_map_one(pt, sys);
        if (!next) throw DomainError("malformed tree word: a '1' step breaks the chain condition");
        pt = std::move(*next);
        break;
      }
    }
  }
  Nat v = value(pt, sys);
  return {std::move(v), std::move(pt)};
}

TreeWord tree_encode(const Partition& pt, const PQSystem& sys) {
  require_p2(sys);
  if (pt.empty()) throw DomainError("the empty partition has no tree word");
  TreeWord word;
  Partition cur = pt;
  Nat U = value(cur, sys);
  while (U >= 2) {
    bool matched = false;
    for (const Branch& b : decompose(U, sys, DecompositionMode::Binary)) {
      if (auto child = strip_branch(b, cur, sys)) {
        for (Step s : b.steps) word.push_back(letter_of(s));
        cur = std::move(*child);
        U = b.child;
        matched = true;
        break;
      }
    }
    if (!matched) throw InvariantViolation("partition matches no branch of Ω(" + to_decimal(U) + ")");
  }
  return word;
}

std::string format_tree_word(const TreeWord& word, const PQSystem& sys) {
  const bool compact = sys.q() < 10;
  std::string out;
  for (Letter l : word) {
    if (!compact && !out.empty()) out += '.';
    switch (l) {
      case Letter::One: out += '1'; break;
      case Letter::Two: out += '2'; break;
      case Letter::Q: out += compact ? std::to_string(sys.q()) : std::string("q"); break;
    }
  }
  return out;
}

TreeWord parse_tree_word(std::string_view text, const PQSystem& sys) {
  require_p2(sys);
  TreeWord word;
  const std::string qdigit = std::to_string(sys.q());
  auto push = [&](std::string_view tok) {
    if (tok == "1") {
      word.push_back(Letter::One);
    } else if (tok == "2") {
      word.push_back(Letter::Two);
    } else if (tok == "q" || tok == qdigit) {
      word.push_back(Letter::Q);
    } else {
      throw DomainError("bad tree-word letter '" + std::string(tok) + "'");
    }
  };
  if (text.find('.') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t dot = text.find('.', start);
      if (dot == std::string_view::npos) dot = text.size();
      push(text.substr(start, dot - start));
      start = dot + 1;
    }
  } else {
    for (std::size_t i = 0; i < text.size(); ++i) push(text.substr(i, 1));
  }
  return word;
}

std::vector<std::string> tree_word_symbols(const TreeWord& word) {
  std::vector<std::string> out;
  for (Letter l : word) out.emplace_back(l == Letter::One ? "1" : l == Letter::Two ? "2" : "q");
  return out;
}

bool is_valid_lattice_word(std::string_view word) {
  if (word.empty() || word.back() != '3') return false;
  if (!std::all_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '3'; })) return false;
  return word.find("02") == std::string_view::npos && word.find("12") == std::string_view::npos;
}

std::string lattice_encode(const Partition& pt) {
  if (pt.empty()) throw DomainError("the empty partition has no lattice word");
  std::vector<Exponents> chain(pt.parts().rbegin(), pt.parts().rend());
  std::string out;
  Exponents at{0, 0};
  std::size_t next = 0;
  for (;;) {
    const bool member = at == chain[next];
    if (member && ++next == chain.size()) {
      out += '3';
      return out;
    }
    if (at.b < chain[next].b) {
      out += member ? '3' : '2';
      ++at.b;
    } else {
      out += member ? '1' : '0';
      ++at.a;
    }
  }
}

Partition lattice_decode(std::string_view word) {
  if (!is_valid_lattice_word(word)) {
    throw DomainError("'" + std::string(word) + "' is not a lattice word (must end in 3, avoid 02 and 12)");
  }
  std::vector<Exponents> chain;
  Exponents at{0, 0};
  for (char c : word) {
    if (c == '1' || c == '3') chain.push_back(at);
    if (c == '0' || c == '1') {
      ++at.a;
    } else {
      ++at.b;
    }
  }
  std::reverse(chain.begin(), chain.end());
  return trusted_partition(std::move(chain));
}

bool is_hypercode(const std::vector<TreeWord>& words) {
  std::vector<std::array<std::size_t, 3>> counts;
  counts.reserve(words.size());
  for (const TreeWord& w : words) counts.push_back(letter_counts(w));
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (i == j || words[i].size() > words[j].size()) continue;
      const auto& ci = counts[i];
      const auto& cj = counts[j];
      if (ci[0] > cj[0] || ci[1] > cj[1] || ci[2] > cj[2]) continue;
      if (is_subsequence(words[i], words[j])) return false;
    }
  }
  return true;
}

bool is_infix_code(const std::vector<std::string>& words) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (i == j || words[i].size() > words[j].size()) continue;
      if (words[j].find(words[i]) != std::string::npos) return false;
    }
  }
  return true;
}

}  // namespace chainpart
