#include "sumsetdim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sumsetdim {

namespace {

// Digit strings as bytes: each byte indexes a table of distinct digit values.
using Word = std::string;

void concatenations(const std::vector<Word>& blocks, const Word& prefix, std::size_t max_length,
                    std::map<std::size_t, std::set<Word>>& out) {
  for (const auto& b : blocks) {
    if (prefix.size() + b.size() > max_length) continue;
    Word next = prefix + b;
    out[next.size()].insert(next);
    concatenations(blocks, next, max_length, out);
  }
}

// True iff s[from..] splits into kept words, each shorter than `limit`.
bool splits(std::string_view s, const std::set<Word, std::less<>>& kept, std::size_t limit) {
  if (s.empty()) return true;
  for (std::size_t len = 1; len <= s.size() && len < limit; ++len)
    if (kept.find(s.substr(0, len)) != kept.end() && splits(s.substr(len), kept, limit)) return true;
  return false;
}

}  // namespace

std::set<Block> brute_force_matchings(const DigitalSet& d1, const DigitalSet& d2, std::size_t max_length) {
  std::vector<Rational> values;
  auto code = [&](const Rational& x) {
    auto it = std::find(values.begin(), values.end(), x);
    if (it != values.end()) return static_cast<char>(it - values.begin());
    if (values.size() >= 255) throw std::invalid_argument("too many distinct digits for the brute-force oracle");
    values.push_back(x);
    return static_cast<char>(values.size() - 1);
  };
  auto words = [&](const DigitalSet& d) {
    std::vector<Word> out;
    for (const auto& b : d.blocks()) {
      Word w;
      for (const auto& x : b.digits()) w.push_back(code(x));
      out.push_back(w);
    }
    return out;
  };
  std::vector<Word> w1 = words(d1);
  std::vector<Word> w2 = words(d2);
  const std::size_t n_inputs = values.size();
  std::vector<std::vector<char>> sum_code(n_inputs, std::vector<char>(n_inputs));
  for (std::size_t i = 0; i < n_inputs; ++i)
    for (std::size_t j = 0; j < n_inputs; ++j) sum_code[i][j] = code(values[i] + values[j]);

  std::map<std::size_t, std::set<Word>> c1, c2;
  concatenations(w1, {}, max_length, c1);
  concatenations(w2, {}, max_length, c2);

  std::set<Word, std::less<>> kept;
  for (std::size_t n = 1; n <= max_length; ++n) {
    auto it1 = c1.find(n);
    auto it2 = c2.find(n);
    if (it1 == c1.end() || it2 == c2.end()) continue;
    std::set<Word> fresh;
    Word s(n, '\0');
    for (const auto& u : it1->second)
      for (const auto& v : it2->second) {
        for (std::size_t k = 0; k < n; ++k)
          s[k] = sum_code[static_cast<unsigned char>(u[k])][static_cast<unsigned char>(v[k])];
        if (!splits(s, kept, n)) fresh.insert(s);
      }
    kept.insert(fresh.begin(), fresh.end());
  }

  std::set<Block> out;
  for (const auto& w : kept) {
    std::vector<Rational> digits;
    for (char c : w) digits.push_back(values[static_cast<unsigned char>(c)]);
    out.insert(Block(std::move(digits)));
  }
  return out;
}

namespace {

void dedupe(std::vector<double>& pts, double resolution) {
  std::sort(pts.begin(), pts.end());
  const double gap = resolution / 4;
  std::vector<double> out;
  out.reserve(pts.size());
  for (double p : pts)
    if (out.empty() || p - out.back() > gap) out.push_back(p);
  pts = std::move(out);
}

}  // namespace

PointCloud sample_attractor(std::span<const Similitude> ifs, const Base& base, std::size_t depth, std::size_t cap) {
  if (ifs.empty()) throw std::invalid_argument("empty IFS");
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  double total = std::pow(static_cast<double>(ifs.size()), static_cast<double>(depth));
  if (total > static_cast<double>(cap))
    throw CapExceeded(std::to_string(ifs.size()) + "^" + std::to_string(depth) + " compositions exceed cap " +
                      std::to_string(cap));

  Interval hull = convex_hull(ifs, base);
  std::vector<std::pair<double, double>> maps;  // (ratio, translation)
  int min_len = ifs.front().exponent;
  for (const auto& s : ifs) {
    maps.emplace_back(s.ratio(base).get_d(), s.translation.get_d());
    min_len = std::min(min_len, s.exponent);
  }

  PointCloud cloud;
  cloud.depth = depth;
  cloud.resolution = std::pow(base.as_double(), -static_cast<double>(depth) * min_len) * hull.width().get_d();
  Rational mid = (hull.lo + hull.hi) / 2;
  std::vector<double> pts{mid.get_d()};
  for (std::size_t level = 0; level < depth; ++level) {
    std::vector<double> next;
    next.reserve(pts.size() * maps.size());
    for (auto [r, a] : maps)
      for (double p : pts) next.push_back(r * p + a);
    pts = std::move(next);
  }
  dedupe(pts, cloud.resolution);
  cloud.points = std::move(pts);
  return cloud;
}

PointCloud sumset_cloud(const PointCloud& a, const PointCloud& b, std::size_t cap) {
  double total = static_cast<double>(a.points.size()) * static_cast<double>(b.points.size());
  if (total > static_cast<double>(cap))
    throw CapExceeded(std::to_string(a.points.size()) + " x " + std::to_string(b.points.size()) +
                      " sums exceed cap " + std::to_string(cap));
  PointCloud out;
  out.depth = std::min(a.depth, b.depth);
  out.resolution = a.resolution + b.resolution;
  out.points.reserve(a.points.size() * b.points.size());
  for (double x : a.points)
    for (double y : b.points) out.points.push_back(x + y);
  dedupe(out.points, out.resolution);
  return out;
}

BoxCountEstimate box_count_dimension(const PointCloud& cloud, const Base& base, int j_min, int j_max) {
  if (cloud.points.empty()) throw std::invalid_argument("empty cloud");
  if (j_max - j_min + 1 < 4) throw std::invalid_argument("need at least four scales");
  const double beta = base.as_double();
  const double eps_min = std::pow(beta, -j_max);
  if (eps_min < 4 * cloud.resolution)
    throw std::invalid_argument("finest scale is below four times the cloud resolution");

  BoxCountEstimate est;
  std::vector<double> xs, ys;
  for (int j = j_min; j <= j_max; ++j) {
    double eps = std::pow(beta, -j);
    std::size_t n = 0;
    long long last = 0;
    for (double p : cloud.points) {
      long long box = static_cast<long long>(std::floor(p / eps));
      if (n == 0 || box != last) {
        ++n;
        last = box;
      }
    }
    est.series.emplace_back(eps, n);
    xs.push_back(-std::log(eps));
    ys.push_back(std::log(static_cast<double>(n)));
  }
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  est.slope = sxy / sxx;
  double ssr = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - my - est.slope * (xs[i] - mx);
    ssr += r * r;
  }
  est.std_error = std::sqrt(ssr / (k - 2) / sxx);
  return est;
}

std::pair<int, int> default_box_scales(std::size_t depth) {
  int d = static_cast<int>(depth);
  return {static_cast<int>(std::lround(0.3 * d)), d - 3};
}

}  // namespace sumsetdim
