#pragma once

#include <optional>
#include <vector>

#include "sumsetdim/core.hpp"
#include "sumsetdim/matching.hpp"

namespace sumsetdim {

/// Block lengths of a digital set, counted with multiplicity, kept sorted.
class LengthMultiset {
 public:
  explicit LengthMultiset(std::vector<int> lengths);
  LengthMultiset(std::initializer_list<int> lengths) : LengthMultiset(std::vector<int>(lengths)) {}
  static LengthMultiset of(const DigitalSet& d);

  const std::vector<int>& lengths() const { return lengths_; }
  std::size_t size() const { return lengths_.size(); }
  int min() const { return lengths_.front(); }
  int max() const { return lengths_.back(); }

  friend bool operator==(const LengthMultiset&, const LengthMultiset&) = default;

 private:
  std::vector<int> lengths_;
};

bool is_homogeneous(const LengthMultiset& lengths);

/// Ordered t-fold sums: the block lengths of the t-times iterated IFS.
/// t = 2 on {6, 10} gives {12, 16, 16, 20}.
std::vector<int> iterated_lengths(const LengthMultiset& lengths, int t);

/// Smallest t such that every t-fold sum of `lengths` is divisible by k, if any.
/// All lengths must share one residue r mod k; then t = k / gcd(r, k).
std::optional<int> multiplier_witness(const LengthMultiset& lengths, int k);

bool is_multiplier_set(const LengthMultiset& lengths, int k);

enum class Finiteness { Finite, Infinite };

/// Finite iff one side is homogeneous of length k and the other side is a multiplier set of k.
Finiteness finiteness(const LengthMultiset& l1, const LengthMultiset& l2);

/// Upper bound on the length of any primitive Matching when finiteness() is Finite:
/// (k / gcd(r, k)) * max(L2 u {k}), minimised over the orientations that apply.
/// Throws std::invalid_argument for an Infinite pair.
int primitive_length_bound(const LengthMultiset& l1, const LengthMultiset& l2);

/// Lazily extends the primitive Matching list of an infinite system.
class MatchingGenerator {
 public:
  MatchingGenerator(DigitalSet d1, DigitalSet d2, EnumerationOptions options)
      : d1_(std::move(d1)), d2_(std::move(d2)), options_(options) {}

  MatchingSet up_to(std::size_t lmax) const { return matchings_up_to(d1_, d2_, lmax, options_); }

 private:
  DigitalSet d1_;
  DigitalSet d2_;
  EnumerationOptions options_;
};

/// Drops every block that is a concatenation of other blocks of the same set (including
/// repeats). The attractor and the concatenation strings, hence the Matchings, are unchanged;
/// only the length multiset seen by finiteness() becomes faithful to the strings.
DigitalSet reduce_redundant_blocks(const DigitalSet& d);

enum class StructureTag { SelfSimilar, IIFSAttractor };

struct StructureClass {
  StructureTag tag;
  /// SelfSimilar: the complete primitive Matching set (the finite IFS of the sum).
  MatchingSet finite_ifs;
  /// SelfSimilar: the enumeration bound that certified completeness.
  int length_bound = 0;
  /// IIFSAttractor: source of ever longer prefixes of the infinite Matching list.
  std::optional<MatchingGenerator> generator;
  /// Blocks removed by reduce_redundant_blocks before the length test.
  std::size_t dropped_blocks = 0;
};

/// Reduces both sets, then applies the length criterion to the reduced sets.
StructureClass classify_structure(const DigitalSet& d1, const DigitalSet& d2, const EnumerationOptions& options = {});

enum class Countability { Yes, Unknown };

/// Yes when both sides have block lengths {k, ..., k, 2k} for one common k (at least one k,
/// exactly one 2k). This is only sufficient; anything else is Unknown, never "no".
Countability c_countable_sufficient(const LengthMultiset& l1, const LengthMultiset& l2);

struct IrrationalAssumption {
  bool holds = false;
  /// Set when the assumption fails: every ratio is base^-n for this common base.
  std::optional<Base> base;
  std::vector<int> exponents1;
  std::vector<int> exponents2;
};

/// Decides whether some log r_i / log r'_j is irrational, for rational ratios in (0, 1).
/// On failure returns the largest common base and the exponent lists.
/// Throws InputError for a ratio outside (0, 1).
IrrationalAssumption irrational_assumption(const std::vector<Rational>& ratios1, const std::vector<Rational>& ratios2);

}  // namespace sumsetdim
