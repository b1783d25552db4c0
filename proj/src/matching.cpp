#include "sumsetdim/matching.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "cut_free.hpp"

namespace sumsetdim {

std::size_t MatchingSet::size() const {
  std::size_t n = 0;
  for (const auto& [len, blocks] : by_length) n += blocks.size();
  return n;
}

bool MatchingSet::contains(const Block& b) const {
  auto it = by_length.find(b.size());
  return it != by_length.end() && std::binary_search(it->second.begin(), it->second.end(), b);
}

std::vector<Block> MatchingSet::all() const {
  std::vector<Block> out;
  for (const auto& [len, blocks] : by_length) out.insert(out.end(), blocks.begin(), blocks.end());
  return out;
}

namespace {

using Code = std::uint32_t;
using CodeString = std::vector<Code>;

struct CodeStringHash {
  std::size_t operator()(const CodeString& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Code c : s) h = (h ^ c) * 1099511628211ull;
    return h;
  }
};

using CodeSet = std::unordered_set<CodeString, CodeStringHash>;

class Alphabet {
 public:
  Code id(const Rational& q) {
    auto [it, inserted] = ids_.try_emplace(q, static_cast<Code>(values_.size()));
    if (inserted) values_.push_back(q);
    return it->second;
  }
  const Rational& value(Code c) const { return values_[c]; }
  std::size_t size() const { return values_.size(); }

 private:
  std::map<Rational, Code> ids_;
  std::vector<Rational> values_;
};

std::vector<CodeString> encode(const DigitalSet& d, Alphabet& alphabet) {
  std::vector<CodeString> out;
  for (const auto& b : d.blocks()) {
    CodeString s;
    for (const auto& digit : b.digits()) s.push_back(alphabet.id(digit));
    out.push_back(std::move(s));
  }
  return out;
}

Block decode(const CodeString& s, const Alphabet& alphabet) {
  std::vector<Rational> digits;
  digits.reserve(s.size());
  for (Code c : s) digits.push_back(alphabet.value(c));
  return Block(std::move(digits));
}

// Distinct concatenations of each exact length 0..length.
std::vector<CodeSet> concat_strings(const std::vector<CodeString>& blocks, std::size_t length, std::size_t cap) {
  std::vector<CodeSet> by_len(length + 1);
  by_len[0].insert(CodeString{});
  for (std::size_t n = 1; n <= length; ++n) {
    for (const auto& b : blocks) {
      if (b.size() > n) continue;
      for (const auto& prefix : by_len[n - b.size()]) {
        CodeString s = prefix;
        s.insert(s.end(), b.begin(), b.end());
        by_len[n].insert(std::move(s));
        if (by_len[n].size() > cap)
          throw CapExceeded("concatenation count at length " + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap));
      }
    }
  }
  return by_len;
}

class Trie {
 public:
  Trie() : next_(1), terminal_(1, false) {}

  void insert(const CodeString& s) {
    int node = 0;
    for (Code c : s) {
      auto [it, inserted] = next_[node].try_emplace(c, static_cast<int>(next_.size()));
      if (inserted) {
        next_.emplace_back();
        terminal_.push_back(false);
      }
      node = it->second;
    }
    terminal_[node] = true;
  }

  // Concatenation of one or more stored strings.
  bool splits(const CodeString& s) const {
    std::vector<char> reach(s.size() + 1, 0);
    reach[0] = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!reach[i]) continue;
      int node = 0;
      for (std::size_t j = i; j < s.size(); ++j) {
        auto it = next_[node].find(s[j]);
        if (it == next_[node].end()) break;
        node = it->second;
        if (terminal_[node]) reach[j + 1] = 1;
      }
    }
    return reach[s.size()] != 0;
  }

 private:
  std::vector<std::unordered_map<Code, int>> next_;
  std::vector<bool> terminal_;
};

// Depth-first walk over cut-free floor pairs, bucketing their digit sums by length.
class CutFreeWalker {
 public:
  CutFreeWalker(const std::vector<CodeString>& b0, const std::vector<CodeString>& b1,
                const std::vector<std::vector<Code>>& sum_code, const detail::CutFreeLengths& automaton,
                std::size_t lmax, std::size_t cap, std::size_t storage_cap)
      : blocks_{&b0, &b1}, sum_code_(sum_code), automaton_(automaton), lmax_(lmax), cap_(cap),
        storage_cap_(storage_cap),
        candidates_(lmax + 1), pairs_(lmax + 1, 0) {}

  std::vector<CodeSet> run() {
    for (const auto& a : *blocks_[0]) {
      for (const auto& b : *blocks_[1]) {
        if (a.size() > lmax_ || b.size() > lmax_) continue;
        append(0, a);
        append(1, b);
        if (a.size() == b.size()) {
          emit(a.size());
        } else {
          int leader = a.size() > b.size() ? 0 : 1;
          std::size_t lead = std::max(a.size(), b.size());
          if (feasible(leader, static_cast<int>(lead - std::min(a.size(), b.size())), lead)) extend();
        }
        pop(1, b.size());
        pop(0, a.size());
      }
    }
    return std::move(candidates_);
  }

 private:
  bool feasible(int leader, int lag, std::size_t lead) const {
    long extra = automaton_.min_extra(automaton_.state(leader, lag));
    return extra != detail::CutFreeLengths::kUnreachable && lead + static_cast<std::size_t>(extra) <= lmax_;
  }

  void extend() {
    int trailing = floor_[0].size() < floor_[1].size() ? 0 : 1;
    int leader = 1 - trailing;
    std::size_t pt = floor_[trailing].size(), pl = floor_[leader].size();
    for (const auto& b : *blocks_[trailing]) {
      std::size_t np = pt + b.size();
      if (np > lmax_) continue;
      if (np == pl) {
        append(trailing, b);
        emit(np);
        pop(trailing, b.size());
        continue;
      }
      bool ok = np < pl ? feasible(leader, static_cast<int>(pl - np), pl)
                        : feasible(trailing, static_cast<int>(np - pl), np);
      if (!ok) continue;
      append(trailing, b);
      extend();
      pop(trailing, b.size());
    }
  }

  void emit(std::size_t len) {
    if (++pairs_[len] > cap_)
      throw CapExceeded("candidate pairs at length " + std::to_string(len) + " exceed cap " + std::to_string(cap_));
    CodeString s(len);
    for (std::size_t i = 0; i < len; ++i) s[i] = sum_code_[floor_[0][i]][floor_[1][i]];
    if (candidates_[len].insert(std::move(s)).second && ++stored_ > storage_cap_)
      throw CapExceeded("distinct candidates exceed storage cap " + std::to_string(storage_cap_));
  }

  void append(int side, const CodeString& b) { floor_[side].insert(floor_[side].end(), b.begin(), b.end()); }
  void pop(int side, std::size_t n) { floor_[side].resize(floor_[side].size() - n); }

  const std::vector<CodeString>* blocks_[2];
  const std::vector<std::vector<Code>>& sum_code_;
  const detail::CutFreeLengths& automaton_;
  std::size_t lmax_;
  std::size_t cap_;
  std::size_t storage_cap_;
  std::size_t stored_ = 0;
  CodeString floor_[2];
  std::vector<CodeSet> candidates_;
  std::vector<std::size_t> pairs_;
};

}  // namespace

std::vector<Block> enumerate_concat_sums(const DigitalSet& digits, std::size_t length, std::size_t cap) {
  Alphabet alphabet;
  auto blocks = encode(digits, alphabet);
  auto by_len = concat_strings(blocks, length, cap);
  std::vector<Block> out;
  if (length == 0) return out;
  for (const auto& s : by_len[length]) out.push_back(decode(s, alphabet));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_decomposable(const Block& b, const MatchingSet& kept) {
  const std::size_t n = b.size();
  std::vector<char> reach(n + 1, 0);
  reach[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (!reach[i]) continue;
    for (const auto& [len, blocks] : kept.by_length) {
      if (len >= n || i + len > n) break;
      for (const auto& m : blocks) {
        if (std::equal(m.digits().begin(), m.digits().end(), b.digits().begin() + static_cast<long>(i))) {
          reach[i + len] = 1;
          break;
        }
      }
    }
  }
  return reach[n] != 0;
}

MatchingSet matchings_up_to(const DigitalSet& d1, const DigitalSet& d2, std::size_t lmax,
                            const EnumerationOptions& options) {
  if (lmax < 1) throw std::invalid_argument("matchings_up_to: lmax must be at least 1");

  Alphabet floor_alphabet[2];
  auto blocks1 = encode(d1, floor_alphabet[0]);
  auto blocks2 = encode(d2, floor_alphabet[1]);
  // Repeated blocks spell the same strings; walking them twice only multiplies the pairs.
  for (auto* b : {&blocks1, &blocks2}) {
    std::sort(b->begin(), b->end());
    b->erase(std::unique(b->begin(), b->end()), b->end());
  }
  Alphabet sums;
  std::vector<std::vector<Code>> sum_code(floor_alphabet[0].size(), std::vector<Code>(floor_alphabet[1].size()));
  for (Code a = 0; a < floor_alphabet[0].size(); ++a)
    for (Code b = 0; b < floor_alphabet[1].size(); ++b)
      sum_code[a][b] = sums.id(floor_alphabet[0].value(a) + floor_alphabet[1].value(b));

  std::vector<CodeSet> candidates;
  if (options.strategy == EnumerationStrategy::CutFreePairs) {
    std::vector<int> len1, len2;
    for (const auto& b : blocks1) len1.push_back(static_cast<int>(b.size()));
    for (const auto& b : blocks2) len2.push_back(static_cast<int>(b.size()));
    detail::CutFreeLengths automaton(len1, len2);
    candidates = CutFreeWalker(blocks1, blocks2, sum_code, automaton, lmax, options.candidate_cap,
                               options.storage_cap)
                     .run();
  } else {
    auto u = concat_strings(blocks1, lmax, options.candidate_cap);
    auto v = concat_strings(blocks2, lmax, options.candidate_cap);
    candidates.resize(lmax + 1);
    std::size_t stored = 0;
    for (std::size_t len = 1; len <= lmax; ++len) {
      if (u[len].size() * v[len].size() > options.candidate_cap)
        throw CapExceeded("candidate pairs at length " + std::to_string(len) + " exceed cap " +
                          std::to_string(options.candidate_cap));
      for (const auto& a : u[len]) {
        for (const auto& b : v[len]) {
          CodeString s(len);
          for (std::size_t i = 0; i < len; ++i) s[i] = sum_code[a[i]][b[i]];
          if (candidates[len].insert(std::move(s)).second && ++stored > options.storage_cap)
            throw CapExceeded("distinct candidates exceed storage cap " + std::to_string(options.storage_cap));
        }
      }
    }
  }

  MatchingSet out;
  out.cutoff = lmax;
  Trie kept;
  for (std::size_t len = 1; len <= lmax; ++len) {
    std::vector<const CodeString*> fresh;
    for (const auto& s : candidates[len])
      if (!kept.splits(s)) fresh.push_back(&s);
    if (fresh.empty()) continue;
    auto& bucket = out.by_length[len];
    for (const auto* s : fresh) {
      kept.insert(*s);
      bucket.push_back(decode(*s, sums));
    }
    std::sort(bucket.begin(), bucket.end());
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> matching_counts(const MatchingSet& ms) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [len, blocks] : ms.by_length)
    if (!blocks.empty()) out.emplace_back(len, blocks.size());
  return out;
}

}  // namespace sumsetdim
