#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "sumsetdim/classify.hpp"

using namespace sumsetdim;

namespace {

// Every t-fold ordered sum for t = 1..k divisible by k, for some t.
bool multiplier_by_sweep(const LengthMultiset& lengths, int k) {
  std::set<int> residues{0};
  for (int t = 1; t <= k; ++t) {
    std::set<int> next;
    for (int r : residues)
      for (int l : lengths.lengths()) next.insert((r + l) % k);
    residues = std::move(next);
    if (residues == std::set<int>{0}) return true;
  }
  return false;
}

void for_each_multiset(int max_elem, int max_size, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (!cur.empty()) fn(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int v = from; v <= max_elem; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(1);
}

std::size_t longest(const MatchingSet& ms) { return ms.by_length.empty() ? 0 : ms.by_length.rbegin()->first; }

}  // namespace

TEST_CASE("homogeneity") {
  CHECK(is_homogeneous({1, 1}));
  CHECK_FALSE(is_homogeneous({1, 2}));
  CHECK(is_homogeneous({4, 4}));
  CHECK_THROWS(LengthMultiset(std::vector<int>{}));
  CHECK_THROWS(LengthMultiset({0, 1}));
}

TEST_CASE("multiplier sets") {
  CHECK(is_multiplier_set({6, 10}, 4));
  CHECK(multiplier_witness({6, 10}, 4) == 2);
  CHECK(iterated_lengths({6, 10}, 2) == std::vector<int>{12, 16, 16, 20});
  for (int k = 1; k <= 6; ++k) CHECK(is_multiplier_set({k}, k));
  CHECK_FALSE(is_multiplier_set({1, 2}, 2));
  CHECK(multiplier_witness({3, 5}, 2) == 2);
  CHECK(multiplier_witness({4, 8}, 4) == 1);
}

TEST_CASE("congruence test equals the t-sweep on small multisets") {
  int checked = 0;
  for_each_multiset(8, 4, [&](const std::vector<int>& xs) {
    LengthMultiset lm(xs);
    for (int k = 1; k <= 6; ++k) {
      bool fast = is_multiplier_set(lm, k);
      CHECK(fast == multiplier_by_sweep(lm, k));
      if (fast) {
        int t = *multiplier_witness(lm, k);
        for (int s : iterated_lengths(lm, t)) CHECK(s % k == 0);
      }
      ++checked;
    }
  });
  CHECK(checked > 1000);
}

TEST_CASE("finiteness verdicts") {
  CHECK(finiteness({4, 4}, {6, 10}) == Finiteness::Finite);
  CHECK(finiteness({6, 10}, {4, 4}) == Finiteness::Finite);
  CHECK(finiteness({1, 2}, {1, 2}) == Finiteness::Infinite);
  CHECK(finiteness({2, 2}, {2, 2}) == Finiteness::Finite);
  CHECK(finiteness({1, 1}, {1, 2}) == Finiteness::Finite);
  CHECK(finiteness({2, 2}, {1, 2}) == Finiteness::Infinite);
}

TEST_CASE("primitive length bound") {
  CHECK(primitive_length_bound({4, 4}, {6, 10}) == 20);
  for (int k = 1; k <= 5; ++k) CHECK(primitive_length_bound({k, k}, {k}) == k);
  CHECK(primitive_length_bound({2, 2}, {2, 2}) == 2);
  CHECK(primitive_length_bound({1, 1}, {1, 2}) == 2);
  CHECK_THROWS_AS(primitive_length_bound({1, 2}, {1, 2}), std::invalid_argument);
}

TEST_CASE("length bound 20 survives enumeration to 40") {
  auto d1 = DigitalSet({Block::of({0, 0, 0, 1}), Block::of({0, 1, 0, 0})}, Source::First);
  auto d2 = DigitalSet({Block::of({1, 0, 0, 0, 0, 2}), Block::of({0, 0, 1, 0, 0, 0, 0, 0, 0, 1})},
                       Source::Second);
  REQUIRE(primitive_length_bound(LengthMultiset::of(d1), LengthMultiset::of(d2)) == 20);
  auto ms = matchings_up_to(d1, d2, 40);
  CHECK_FALSE(ms.empty());
  CHECK(longest(ms) <= 20);
}

TEST_CASE("structure of worked pairs") {
  auto pair_4_1 = DigitalSet({Block::of({0}), Block::of({2, 2})}, Source::First);
  auto sc = classify_structure(pair_4_1, DigitalSet(pair_4_1.blocks(), Source::Second));
  CHECK(sc.tag == StructureTag::IIFSAttractor);
  CHECK(sc.generator.has_value());
  CHECK(sc.generator->up_to(6).size() == 7);

  auto two = DigitalSet({Block::of({0}), Block::of({2})}, Source::First);
  auto sc2 = classify_structure(two, DigitalSet({Block::of({0}), Block::of({2, 2})}, Source::Second));
  CHECK(sc2.tag == StructureTag::SelfSimilar);
  CHECK(sc2.finite_ifs.complete);
  CHECK(sc2.finite_ifs.size() == 5);

  auto a = DigitalSet({Block::of({2, 3}), Block::of({3, 4})}, Source::First);
  auto b = DigitalSet({Block::of({3, 2}), Block::of({1, 5})}, Source::Second);
  auto sc3 = classify_structure(a, b);
  CHECK(sc3.tag == StructureTag::SelfSimilar);
  CHECK(sc3.length_bound == 2);
  CHECK(sc3.finite_ifs.size() == 4);
}

TEST_CASE("redundant blocks") {
  auto d = DigitalSet({Block::of({2}), Block::of({4}), Block::of({2, 4}), Block::of({4}), Block::of({1, 1})},
                      Source::First);
  auto r = reduce_redundant_blocks(d);
  std::set<Block> kept(r.blocks().begin(), r.blocks().end());
  CHECK(kept == std::set<Block>{Block::of({2}), Block::of({4}), Block::of({1, 1})});
  CHECK(r.size() == 3);

  auto plain = DigitalSet({Block::of({0}), Block::of({2, 2})}, Source::Second);
  CHECK(reduce_redundant_blocks(plain).size() == 2);
  CHECK(reduce_redundant_blocks(plain).source() == Source::Second);

  // {(1),(1,1)}: (1,1) is (1)(1); a singleton survives.
  auto ones = DigitalSet({Block::of({1, 1}), Block::of({1})}, Source::First);
  CHECK(reduce_redundant_blocks(ones).blocks() == std::vector<Block>{Block::of({1})});

  auto e = DigitalSet({Block::of({10}), Block::of({1, 2, 2})}, Source::First);
  auto f = DigitalSet({Block::of({2, 4}), Block::of({4}), Block::of({2})}, Source::Second);
  auto sc = classify_structure(e, f);
  CHECK(sc.dropped_blocks == 1);
  CHECK(sc.tag == StructureTag::SelfSimilar);
}

TEST_CASE("reduction keeps the Matchings on random sets") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto make = [&](Source s) {
      std::vector<Block> blocks;
      int n = 2 + static_cast<int>(rng() % 3);
      for (int i = 0; i < n; ++i) {
        std::vector<Rational> d;
        int len = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < len; ++j) d.emplace_back(static_cast<long>(rng() % 2) * 2);
        blocks.emplace_back(std::move(d));
      }
      return DigitalSet(std::move(blocks), s);
    };
    auto d1 = make(Source::First);
    auto d2 = make(Source::Second);
    auto all = [](const MatchingSet& m) { return m.all(); };
    CHECK(all(matchings_up_to(d1, d2, 8)) ==
          all(matchings_up_to(reduce_redundant_blocks(d1), reduce_redundant_blocks(d2), 8)));
  }
}

TEST_CASE("cross-set digit collisions can starve an infinite verdict") {
  // Lengths say Infinite, yet up to length 24 no Matching is longer than 5.
  auto d1 = DigitalSet({Block::of({2}), Block::of({4, 2, 2, 2})}, Source::First);
  auto d2 = DigitalSet({Block::of({4}), Block::of({4}), Block::of({4, 2})}, Source::Second);
  auto sc = classify_structure(d1, d2);
  CHECK(sc.tag == StructureTag::IIFSAttractor);
  CHECK(longest(sc.generator->up_to(24)) == 5);
}

TEST_CASE("countability sufficient test") {
  CHECK(c_countable_sufficient({1, 1, 2}, {1, 1, 2}) == Countability::Yes);
  CHECK(c_countable_sufficient({3, 6}, {3, 3, 3, 6}) == Countability::Yes);
  CHECK(c_countable_sufficient({1, 2}, {1, 3}) == Countability::Unknown);
  CHECK(c_countable_sufficient({3, 3}, {3, 3}) == Countability::Unknown);
  CHECK(c_countable_sufficient({1, 2}, {2, 4}) == Countability::Unknown);
  CHECK(c_countable_sufficient({1, 2, 2}, {1, 2}) == Countability::Unknown);
}

TEST_CASE("cut-free alignments of {k,...,k,2k} floors are k then 2k forever") {
  // Pairs of compositions of L into parts k and 2k with no common interior cut, by brute force,
  // against the pairs where one floor starts with k, the other runs 2k, and one k closes.
  for (int k = 1; k <= 3; ++k) {
    const int depth = 6 * k;
    using Parts = std::vector<int>;
    std::vector<std::vector<Parts>> by_len(depth + 1);
    std::function<void(Parts&, int)> rec = [&](Parts& cur, int sum) {
      if (sum > 0) by_len[sum].push_back(cur);
      for (int part : {k, 2 * k}) {
        if (sum + part > depth) continue;
        cur.push_back(part);
        rec(cur, sum + part);
        cur.pop_back();
      }
    };
    Parts start;
    rec(start, 0);

    auto cuts = [](const Parts& parts) {
      std::set<int> out;
      int s = 0;
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) out.insert(s += parts[i]);
      return out;
    };
    std::set<std::pair<Parts, Parts>> found;
    for (int L = 1; L <= depth; ++L)
      for (const auto& u : by_len[L])
        for (const auto& v : by_len[L]) {
          auto cu = cuts(u);
          auto cv = cuts(v);
          std::vector<int> common;
          std::set_intersection(cu.begin(), cu.end(), cv.begin(), cv.end(), std::back_inserter(common));
          if (common.empty()) found.emplace(u, v);
        }

    std::set<std::pair<Parts, Parts>> expected{{{2 * k}, {2 * k}}};
    auto add = [&](const Parts& a, const Parts& b) {
      int total = std::accumulate(a.begin(), a.end(), 0);
      if (total > depth) return;
      expected.emplace(a, b);
      expected.emplace(b, a);
    };
    for (int m = 0; 2 * k * m + k <= depth; ++m) {
      Parts lead{k}, run;
      for (int i = 0; i < m; ++i) {
        lead.push_back(2 * k);
        run.push_back(2 * k);
      }
      Parts run_closed = run;
      run_closed.push_back(k);
      add(lead, run_closed);
      Parts lead_closed = lead;
      lead_closed.push_back(k);
      run.push_back(2 * k);
      add(lead_closed, run);
    }
    CHECK(found == expected);
  }
}

TEST_CASE("irrational assumption") {
  auto fails = irrational_assumption({Rational(1, 4), Rational(1, 8)}, {Rational(1, 2)});
  CHECK_FALSE(fails.holds);
  REQUIRE(fails.base.has_value());
  CHECK(fails.base->value() == 2);
  CHECK(fails.exponents1 == std::vector<int>{2, 3});
  CHECK(fails.exponents2 == std::vector<int>{1});

  CHECK(irrational_assumption({Rational(1, 2)}, {Rational(1, 3)}).holds);

  auto three = irrational_assumption({Rational(1, 3), Rational(1, 9)}, {Rational(1, 3)});
  CHECK_FALSE(three.holds);
  CHECK(three.base->value() == 3);

  CHECK(irrational_assumption({Rational(4, 9)}, {Rational(8, 27)}).base->value() == Rational(3, 2));
  CHECK(irrational_assumption({Rational(1, 6)}, {Rational(1, 12)}).holds);
  CHECK_THROWS_AS(irrational_assumption({Rational(1)}, {Rational(1, 2)}), InputError);
  CHECK_THROWS_AS(irrational_assumption({Rational(3, 2)}, {Rational(1, 2)}), InputError);
}

TEST_CASE("irrational assumption round trip") {
  std::mt19937 rng(5);
  const Rational bases[] = {Rational(2), Rational(3), Rational(3, 2), Rational(10, 3), Rational(6)};
  for (int trial = 0; trial < 40; ++trial) {
    Rational b = bases[rng() % 5];
    std::vector<Rational> r1, r2;
    for (int i = 0; i < 3; ++i) r1.push_back(1 / pow(b, 1 + rng() % 4));
    for (int i = 0; i < 2; ++i) r2.push_back(1 / pow(b, 1 + rng() % 4));
    auto res = irrational_assumption(r1, r2);
    REQUIRE_FALSE(res.holds);
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(1 / pow(res.base->value(), res.exponents1[i]) == r1[i]);
    for (std::size_t i = 0; i < r2.size(); ++i) CHECK(1 / pow(res.base->value(), res.exponents2[i]) == r2[i]);
    // The returned base is the largest: b raised to the gcd of the drawn exponents.
    unsigned common = 0;
    for (const auto* list : {&r1, &r2})
      for (const auto& r : *list)
        for (unsigned e = 1; e <= 4; ++e)
          if (1 / pow(b, e) == r) common = std::gcd(common, e);
    CHECK(res.base->value() == pow(b, common));
  }
}
