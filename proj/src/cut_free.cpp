#include "cut_free.hpp"

#include <algorithm>

namespace sumsetdim::detail {

CutFreeLengths::CutFreeLengths(const std::vector<int>& lengths1, const std::vector<int>& lengths2) {
  const std::vector<int>* sides[2] = {&lengths1, &lengths2};
  for (const auto* side : sides)
    for (int l : *side) max_len_ = std::max(max_len_, l);
  for (int side = 0; side < 2; ++side) {
    mult_[side].assign(static_cast<std::size_t>(max_len_) + 1, 0);
    for (int l : *sides[side]) ++mult_[side][l];
    for (int l = 1; l <= max_len_; ++l)
      if (mult_[side][l] > 0) distinct_[side].push_back(l);
  }

  // Bellman-Ford style relaxation; the state graph is tiny.
  min_extra_.assign(static_cast<std::size_t>(std::max(num_states(), 0)), kUnreachable);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < num_states(); ++s) {
      int leader = leader_of(s), lag = lag_of(s), trailing = 1 - leader;
      long best = min_extra_[s];
      for (int l : distinct_[trailing]) {
        long cand = kUnreachable;
        if (l == lag) {
          cand = 0;
        } else if (l < lag) {
          cand = min_extra_[state(leader, lag - l)];
        } else {
          long next = min_extra_[state(trailing, l - lag)];
          if (next != kUnreachable) cand = next + (l - lag);
        }
        best = std::min(best, cand);
      }
      if (best < min_extra_[s]) {
        min_extra_[s] = best;
        changed = true;
      }
    }
  }
}

}  // namespace sumsetdim::detail
