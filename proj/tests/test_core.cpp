#include <random>

#include "doctest.h"
#include "sumsetdim/core.hpp"

using namespace sumsetdim;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Block random_block(std::mt19937& rng, std::size_t len) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  std::vector<Rational> d;
  for (std::size_t i = 0; i < len; ++i) d.push_back(q(num(rng), den(rng)));
  return Block(std::move(d));
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3") == -3);
  CHECK(parse_rational("8/9") == q(8, 9));
  CHECK(parse_rational("4/6") == q(2, 3));
  CHECK_THROWS_WITH_AS(parse_rational("2/0"), "zero denominator", InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("base must exceed one") {
  CHECK_THROWS_WITH_AS(Base(1), "base must exceed 1", InputError);
  CHECK_THROWS_AS(Base(q(1, 2)), InputError);
  CHECK(Base(3).inverse_power(2) == q(1, 9));
}

TEST_CASE("exponent must be positive") {
  CHECK_THROWS_AS(Similitude(0, 0), InputError);
}

TEST_CASE("block of a similitude") {
  Base b3(3);
  CHECK(block_of_similitude(Similitude(2, q(8, 9)), b3) == Block::of({0, 8}));
  CHECK(block_of_similitude(Similitude(1, 0), b3) == Block::of({0}));
  CHECK(block_of_similitude(Similitude(3, q(1, 2)), Base(2)) == Block::of({0, 0, 4}));
}

TEST_CASE("block values") {
  Base b3(3);
  CHECK(value_of_block(Block::of({0, 8}), b3) == q(8, 9));
  CHECK(value_of_block(Block::of({2, 2}), b3) == q(8, 9));
  CHECK(value_of_block(Block::of({0, 0, 0}), Base(q(7, 2))) == 0);
  CHECK(value_of_block(concat_blocks(std::vector<Block>{Block::of({2}), Block::of({2})}), b3) == q(8, 9));
}

TEST_CASE("block sums and concatenation") {
  CHECK(sum_blocks(Block::of({2, 3}), Block::of({3, 2})) == Block::of({5, 5}));
  CHECK(sum_blocks(Block::of({0, 2, 2}), Block::of({2, 2, 0})) == Block::of({2, 4, 2}));
  CHECK(sum_blocks(Block::of({1, 7}), Block::of({0, 0})) == Block::of({1, 7}));
  CHECK_THROWS_AS(sum_blocks(Block::of({1}), Block::of({1, 2})), std::invalid_argument);
  CHECK(concat_blocks(std::vector<Block>{Block::of({0}), Block::of({2, 2})}) == Block::of({0, 2, 2}));
  CHECK(concat_blocks(std::vector<Block>(3, Block::of({1, 2}))) == Block::of({1, 2, 1, 2, 1, 2}));
  CHECK_THROWS_AS(concat_blocks(std::vector<Block>{}), std::invalid_argument);
}

TEST_CASE("block formatting and order") {
  CHECK(Block::of({2, 4, 2}).to_string() == "(242)");
  CHECK(Block::of({0, 16}).to_string() == "(0,16)");
  CHECK(Block({q(1, 2), q(-1)}).to_string() == "(1/2,-1)");
  CHECK(Block::of({9}) < Block::of({0, 0}));
  CHECK(Block::of({2, 4}) < Block::of({4, 2}));
}

TEST_CASE("similitude of a block") {
  Similitude s = similitude_of_block(Block::of({5, 5}), Base(7));
  CHECK(s.exponent == 2);
  CHECK(s.translation == q(40, 49));
  CHECK(similitude_of_block(Block::of({0}), Base(3)) == Similitude(1, 0));
  Similitude t = similitude_of_block(Block::of({2, 4, 2}), Base(3));
  CHECK(t.exponent == 3);
  CHECK(t.translation == q(2, 3) + q(4, 9) + q(2, 27));
}

TEST_CASE("convex hulls") {
  Base b3(3);
  std::vector<Similitude> a{Similitude(1, 0), Similitude(2, q(8, 9))};
  CHECK(convex_hull(a, b3) == Interval(0, 1));
  std::vector<Similitude> one{Similitude(1, 0)};
  CHECK(convex_hull(one, b3) == Interval(0, 0));
  std::vector<Similitude> cantor{Similitude(1, 0), Similitude(1, q(2, 3))};
  CHECK(convex_hull(cantor, b3) == Interval(0, 1));

  // Fixed points v * 49 / 48 of x -> x/49 + v.
  Base b7(7);
  DigitalSet d1({Block::of({2, 3}), Block::of({3, 4})}, Source::First);
  DigitalSet d2({Block::of({3, 2}), Block::of({1, 5})}, Source::Second);
  CHECK(convex_hull(d1, b7) == Interval(q(17, 48), q(25, 48)));
  CHECK(convex_hull(d2, b7) == Interval(q(1, 4), q(23, 48)));
}

TEST_CASE("hull agrees with iterating the extreme maps") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Base base(q(3 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 2)));
    std::vector<Similitude> maps;
    for (int i = 0; i < 3; ++i) maps.emplace_back(1 + static_cast<int>(rng() % 3), q(static_cast<long>(rng() % 7) - 3, 4));
    Interval h = convex_hull(maps, base);
    double lo = 0, hi = 0;
    for (int it = 0; it < 400; ++it) {
      double nlo = 1e300, nhi = -1e300;
      for (const auto& m : maps) {
        double r = m.ratio(base).get_d(), a = m.translation.get_d();
        nlo = std::min(nlo, r * lo + a);
        nhi = std::max(nhi, r * hi + a);
      }
      lo = nlo;
      hi = nhi;
    }
    CHECK(h.lo.get_d() == doctest::Approx(lo).epsilon(1e-12));
    CHECK(h.hi.get_d() == doctest::Approx(hi).epsilon(1e-12));
    for (const auto& m : maps) CHECK(h.contains(image(to_affine(m, base), h)));
  }
}

TEST_CASE("block algebra laws on random rational digits") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Base base(q(3 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 2)));
    std::size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
    Block a = random_block(rng, n), b = random_block(rng, n), c = random_block(rng, m);
    CHECK(value_of_block(sum_blocks(a, b), base) == value_of_block(a, base) + value_of_block(b, base));
    CHECK(value_of_block(concat_blocks(std::vector<Block>{a, c}), base) ==
          value_of_block(a, base) + base.inverse_power(static_cast<unsigned>(n)) * value_of_block(c, base));

    Similitude s(1 + static_cast<int>(rng() % 4), q(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5)));
    CHECK(similitude_of_block(block_of_similitude(s, base), base) == s);
  }
}

TEST_CASE("equal-valued blocks of equal length give one similitude") {
  Base b3(3);
  CHECK(similitude_of_block(Block::of({0, 8}), b3) == similitude_of_block(Block::of({2, 2}), b3));
  CHECK_FALSE(Block::of({0, 8}) == Block::of({2, 2}));
}

TEST_CASE("digital sets") {
  CHECK_THROWS_AS(DigitalSet({}, Source::First), InputError);
  Base b3(3);
  std::vector<Similitude> maps{Similitude(1, 0), Similitude(2, q(8, 9))};
  DigitalSet d = DigitalSet::from_maps(maps, b3, Source::First);
  CHECK(d.blocks() == std::vector<Block>{Block::of({0}), Block::of({0, 8})});
  CHECK(d.max_length() == 2);
  CHECK(d.similitudes(b3) == maps);
}

TEST_CASE("interval sums and images") {
  CHECK(Interval(0, 1) + Interval(q(1, 4), 2) == Interval(q(1, 4), 3));
  CHECK(image(AffineMap{q(1, 3), q(2, 3)}, Interval(0, 1)) == Interval(q(2, 3), 1));
  CHECK_THROWS_AS(Interval(1, 0), std::invalid_argument);
}
