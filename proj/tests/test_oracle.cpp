#include <cmath>

#include "doctest.h"
#include "sumsetdim/matching.hpp"
#include "sumsetdim/oracle.hpp"

using namespace sumsetdim;

namespace {

std::vector<Similitude> maps(std::initializer_list<std::pair<int, Rational>> xs) {
  std::vector<Similitude> out;
  for (const auto& [n, a] : xs) out.emplace_back(n, a);
  return out;
}

std::set<Block> as_set(const MatchingSet& ms) {
  auto all = ms.all();
  return {all.begin(), all.end()};
}

}  // namespace

TEST_CASE("brute force Matchings") {
  auto d = DigitalSet({Block::of({0}), Block::of({2, 2})}, Source::First);
  auto e = DigitalSet(d.blocks(), Source::Second);
  CHECK(brute_force_matchings(d, e, 6) == as_set(matchings_up_to(d, e, 6)));
  CHECK(brute_force_matchings(d, e, 6).size() == 7);

  auto one = DigitalSet({Block::of({0}), Block::of({2})}, Source::First);
  auto two = DigitalSet({Block::of({0}), Block::of({2, 2})}, Source::Second);
  std::set<Block> expected{Block::of({0}), Block::of({2}), Block::of({2, 4}), Block::of({4, 2}), Block::of({4, 4})};
  CHECK(brute_force_matchings(one, two, 4) == expected);

  auto z1 = DigitalSet({Block::of({0})}, Source::First);
  auto z2 = DigitalSet({Block::of({0})}, Source::Second);
  for (std::size_t L : {1, 5, 10}) CHECK(brute_force_matchings(z1, z2, L) == std::set<Block>{Block::of({0})});
}

TEST_CASE("attractor samples") {
  Base three(3);
  auto cantor = maps({{1, 0}, {1, Rational(2, 3)}});
  auto c1 = sample_attractor(cantor, three, 1);
  REQUIRE(c1.points.size() == 2);
  CHECK(c1.points[0] == doctest::Approx(1.0 / 6));
  CHECK(c1.points[1] == doctest::Approx(1.0 / 6 + 2.0 / 3));

  Base two(2);
  auto halves = maps({{1, 0}, {1, Rational(1, 2)}});
  auto full = sample_attractor(halves, two, 8);
  CHECK(full.points.size() == 256);
  double max_gap = 0;
  for (std::size_t i = 1; i < full.points.size(); ++i) max_gap = std::max(max_gap, full.points[i] - full.points[i - 1]);
  CHECK(max_gap <= 2 * std::pow(2.0, -8) + 1e-15);
  CHECK(full.points.front() >= 0);
  CHECK(full.points.back() <= 1);

  auto g = maps({{1, 0}, {2, Rational(8, 9)}});
  auto cloud = sample_attractor(g, three, 6);
  CHECK(std::fabs(cloud.points.front() - 0) <= cloud.resolution);
  CHECK(std::fabs(cloud.points.back() - 1) <= cloud.resolution);
  CHECK_THROWS_AS(sample_attractor(halves, two, 30, 1000), CapExceeded);
}

TEST_CASE("sumset clouds") {
  PointCloud zero{{0.0}, 1, 0.1};
  PointCloud zero_one{{0.0, 1.0}, 1, 0.1};
  auto s = sumset_cloud(zero, zero_one);
  CHECK(s.points == std::vector<double>{0.0, 1.0});

  Base three(3);
  auto g = maps({{1, 0}, {2, Rational(8, 9)}});
  auto a = sample_attractor(g, three, 6);
  auto sum = sumset_cloud(a, a);
  CHECK(sum.points.front() >= -sum.resolution);
  CHECK(sum.points.back() <= 2 + sum.resolution);
}

TEST_CASE("box counting") {
  Base two(2);
  auto halves = maps({{1, 0}, {1, Rational(1, 2)}});
  auto full = sample_attractor(halves, two, 12);
  auto [j0, j1] = default_box_scales(12);
  auto est = box_count_dimension(full, two, j0, j1);
  CHECK(std::fabs(est.slope - 1.0) <= 0.02);
  CHECK(est.series.size() == static_cast<std::size_t>(j1 - j0 + 1));

  Base three(3);
  auto cantor = maps({{1, 0}, {1, Rational(2, 3)}});
  auto cloud = sample_attractor(cantor, three, 10);
  auto [k0, k1] = default_box_scales(10);
  auto c = box_count_dimension(cloud, three, k0, k1);
  CHECK(std::fabs(c.slope - std::log(2.0) / std::log(3.0)) <= 0.03);
  for (std::size_t i = 1; i < c.series.size(); ++i) CHECK(c.series[i].second >= c.series[i - 1].second);

  CHECK_THROWS_AS(box_count_dimension(cloud, three, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(box_count_dimension(cloud, three, 6, 10), std::invalid_argument);
}
