#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "sumsetdim/core.hpp"

namespace sumsetdim {

/// Primitive Matchings found up to a length cutoff.
///
/// A Matching is the digitwise sum of two equal-length concatenations, one of
/// blocks from each digital set. It is primitive when it is not a
/// concatenation of shorter primitive Matchings. `complete` is set only when
/// the classifier has certified that no primitive Matching is longer than
/// `cutoff`.
struct MatchingSet {
  std::map<std::size_t, std::vector<Block>> by_length;  // each vector sorted, no duplicates
  std::size_t cutoff = 0;
  bool complete = false;

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool contains(const Block& b) const;
  /// Ascending length, then lexicographic.
  std::vector<Block> all() const;
};

enum class EnumerationStrategy {
  /// Sum only floor pairs without a common interior cut (default, exponentially cheaper).
  CutFreePairs,
  /// Every pair of equal-length concatenations, then filter.
  FullProduct,
};

struct EnumerationOptions {
  /// Maximum candidate pairs examined at a single length.
  std::size_t candidate_cap = 10'000'000;
  /// Maximum distinct candidate strings held at once over all lengths (bounds memory).
  std::size_t storage_cap = 1'000'000;
  EnumerationStrategy strategy = EnumerationStrategy::CutFreePairs;
};

/// Distinct digit strings of length exactly `length` that are concatenations of blocks of `digits`.
/// Throws CapExceeded when more than `cap` strings would be produced.
std::vector<Block> enumerate_concat_sums(const DigitalSet& digits, std::size_t length,
                                         std::size_t cap = 10'000'000);

/// True iff `b` splits into one or more members of `kept` that are strictly shorter than `b`.
bool is_decomposable(const Block& b, const MatchingSet& kept);

/// All primitive Matchings of length <= lmax, processed in increasing length.
/// Throws CapExceeded when a single length needs more than options.candidate_cap pairs or
/// more than options.storage_cap distinct candidates would be held.
MatchingSet matchings_up_to(const DigitalSet& d1, const DigitalSet& d2, std::size_t lmax,
                            const EnumerationOptions& options = {});

/// (L, c_L) for every length with at least one Matching, ascending.
std::vector<std::pair<std::size_t, std::size_t>> matching_counts(const MatchingSet& ms);

}  // namespace sumsetdim
