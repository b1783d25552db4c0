#pragma once

// Length-level automaton over pairs of floor concatenations (one from each
// digital set) that share no interior cut position. A pair with a common
// interior cut always sums to a concatenation of shorter Matchings, so only
// cut-free pairs can produce primitive Matchings.
//
// State (leader, lag): floor `leader` has its last cut `lag` positions ahead
// of the trailing floor. The trailing floor appends a block of length l:
//   l <  lag  -> (leader, lag - l), lead position unchanged
//   l == lag  -> both floors cut together: the pair is complete
//   l >  lag  -> (other, l - lag), lead position grows by l - lag

#include <cstddef>
#include <limits>
#include <vector>

namespace sumsetdim::detail {

class CutFreeLengths {
 public:
  static constexpr long kUnreachable = std::numeric_limits<long>::max();

  CutFreeLengths(const std::vector<int>& lengths1, const std::vector<int>& lengths2);

  int max_len() const { return max_len_; }
  int num_states() const { return 2 * (max_len_ - 1); }
  int state(int leader, int lag) const { return leader * (max_len_ - 1) + (lag - 1); }
  int leader_of(int s) const { return s / (max_len_ - 1); }
  int lag_of(int s) const { return s % (max_len_ - 1) + 1; }

  /// Number of blocks of length l on floor `side` (0 or 1).
  long multiplicity(int side, int l) const {
    return l >= 0 && l < static_cast<int>(mult_[side].size()) ? mult_[side][l] : 0;
  }
  const std::vector<int>& distinct_lengths(int side) const { return distinct_[side]; }

  /// Least lead-position growth needed to complete from state s, or kUnreachable.
  long min_extra(int s) const { return min_extra_[s]; }

 private:
  int max_len_ = 1;
  std::vector<long> mult_[2];
  std::vector<int> distinct_[2];
  std::vector<long> min_extra_;
};

}  // namespace sumsetdim::detail
