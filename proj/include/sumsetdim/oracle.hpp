#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "sumsetdim/core.hpp"

namespace sumsetdim {

/// Primitive Matchings of length <= max_length by exhaustive enumeration of every pair of
/// equal-length concatenations, then direct string splitting. Slow; meant for L <= 14.
std::set<Block> brute_force_matchings(const DigitalSet& d1, const DigitalSet& d2, std::size_t max_length);

struct PointCloud {
  std::vector<double> points;  // ascending, deduplicated at resolution / 4
  std::size_t depth = 0;
  double resolution = 0;       // every attractor point lies within this distance of a sample
};

/// All depth-fold compositions applied to the hull midpoint.
/// Throws CapExceeded when more than `cap` compositions would be evaluated.
PointCloud sample_attractor(std::span<const Similitude> ifs, const Base& base, std::size_t depth,
                            std::size_t cap = 10'000'000);

/// Pairwise sums. Throws CapExceeded above `cap` pairs.
PointCloud sumset_cloud(const PointCloud& a, const PointCloud& b, std::size_t cap = 100'000'000);

struct BoxCountEstimate {
  double slope = 0;
  double std_error = 0;
  std::vector<std::pair<double, std::size_t>> series;  // (eps, N(eps)), coarse to fine
};

/// Least-squares slope of log N(eps) against log(1/eps) over grid boxes of side
/// eps = base^-j for j = j_min..j_max. Needs at least four scales, each at least four times
/// the cloud resolution; throws std::invalid_argument otherwise. Not a certificate.
BoxCountEstimate box_count_dimension(const PointCloud& cloud, const Base& base, int j_min, int j_max);

/// Default scale range for a cloud sampled at `depth`: round(0.3 depth) .. depth - 3.
std::pair<int, int> default_box_scales(std::size_t depth);

}  // namespace sumsetdim
