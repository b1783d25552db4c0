#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumsetdim/classify.hpp"
#include "sumsetdim/core.hpp"
#include "sumsetdim/matching.hpp"

namespace sumsetdim {

// ---------------------------------------------------------------------------
// Open set condition

enum class OscMethod {
  SufficientInequality,  // A + B + B1 + B2 < c (beta - 1)
  PairwiseInterval,      // exact check of the finite (or truncated) system on the hull interior
  CutFreeAutomaton,      // finite-state check covering every Matching of every length
  Inconclusive,
};

const char* to_string(OscMethod m);

struct OscReport {
  Rational A;   // largest digit over the first digital set
  Rational B;   // largest digit over the second digital set
  Rational B1;  // hull width of the first attractor
  Rational B2;  // hull width of the second attractor
  /// Minimum |c_i - c_j| over digits of two distinct Matchings; empty with fewer than two.
  std::optional<Rational> c;
  bool satisfied = false;
  OscMethod method = OscMethod::Inconclusive;
  std::string note;
};

/// Evaluates A + B + B1 + B2 < c (beta - 1) exactly. Only a complete Matching list with
/// nonnegative digits can satisfy it; a truncated list reports its constants but stays
/// inconclusive, since infinitely many Matchings over a finite digit alphabet force c = 0.
OscReport osc_sufficient_check(const DigitalSet& d1, const DigitalSet& d2, const Interval& hull1,
                               const Interval& hull2, std::span<const Block> matchings, bool complete,
                               const Base& base);

/// True iff the open images of the hull interior are pairwise disjoint and lie in the hull.
bool osc_interval_check(std::span<const AffineMap> maps, const Interval& hull);

struct AutomatonOscReport {
  bool certified = false;
  std::size_t states = 0;  // deterministic states explored
  std::string reason;      // why certification failed, if it did
};

/// Certifies the open set condition for the whole (possibly infinite) Matching system with
/// V = interior(hull1 + hull2).
///
/// Every primitive Matching is spelled by a pair of floor concatenations without a common
/// interior cut. Those pairs are recognised digit by digit by a finite automaton whose states
/// record the current block and offset on each floor; each state carries an exact interval
/// containing every image reachable through it. After determinising by emitted digit, the
/// check requires at every state that the children's intervals have disjoint interiors and,
/// where a Matching ends, that the longer continuations stay clear of its image. Together
/// these give pairwise disjoint images for all Matchings of all lengths.
AutomatonOscReport osc_cut_free_automaton_check(const DigitalSet& d1, const DigitalSet& d2, const Base& base,
                                                std::size_t state_cap = 200'000);

// ---------------------------------------------------------------------------
// Dimension

/// Root s of sum_i base^(-L_i s) = 1; 0 for a single map.
double moran_root(std::span<const int> lengths, const Base& base);

/// Root s of sum_i r_i^s = 1 for ratios in (0, 1).
double moran_root_ratios(std::span<const double> ratios);

/// The lambda >= 1 with sum_i lambda^(-L_i) = 1: growth rate of concatenation counts.
double concat_growth_rate(const LengthMultiset& lengths);

struct IifsBounds {
  double lo = 0;
  double hi = 0;          // +inf when no finite upper bound could be certified
  std::size_t lmax = 0;
  double tail_at_hi = 0;  // certified bound on the omitted series mass at t = hi
  bool converged = false;
  bool cap_hit = false;   // a larger cutoff was attempted and hit the enumeration cap
};

/// Certified bounds on inf{t : sum_L c_L base^(-L t) <= 1} from the Matchings up to ms.cutoff.
/// lo uses the truncated series. hi adds a rigorous tail for lengths beyond the cutoff, the
/// smaller of a cut-free pair count and the product of concatenation counts.
IifsBounds iifs_bounds_at(const MatchingSet& ms, const DigitalSet& d1, const DigitalSet& d2, const Base& base);

/// Omitted-mass bound sum_{L > lmax} c_L base^(-L t) used by iifs_bounds_at.
double iifs_tail_bound(const DigitalSet& d1, const DigitalSet& d2, const Base& base, std::size_t lmax, double t);

/// Doubles the cutoff from `lmax` until hi - lo <= tol, `max_lmax` is passed, or the
/// enumeration cap is hit after at least one successful round.
IifsBounds iifs_dimension_bounds(const DigitalSet& d1, const DigitalSet& d2, const Base& base, std::size_t lmax,
                                 double tol, const EnumerationOptions& options = {}, std::size_t max_lmax = 320);

/// One self-similar factor: its own base and digital set.
struct FactorIfs {
  Base base;
  DigitalSet digits;
};

enum class DimensionTag { Exact, Interval, UpperBoundOnly, PeresShmerkin };

const char* to_string(DimensionTag t);

struct Certificates {
  std::string osc_method = "none";
  std::size_t lmax = 0;
  double tail_bound = 0;
  std::string summary;             // one-line human statement
  std::vector<std::string> notes;  // caveats
};

struct DimensionResult {
  DimensionTag tag = DimensionTag::UpperBoundOnly;
  double value = 0;  // Exact, PeresShmerkin, or the upper bound for UpperBoundOnly
  double lo = 0;
  double hi = 0;
  std::string structure;  // "SelfSimilar", "IIFSAttractor" or "PeresShmerkin"
  Certificates certificates;
  bool cap_hit = false;
};

struct DimensionOptions {
  std::size_t lmax = 40;
  double tol = 1e-3;
  EnumerationOptions enumeration;
  std::size_t automaton_state_cap = 200'000;
  std::size_t max_lmax = 320;
};

/// Full pipeline: irrational-assumption test, structure classification, open set
/// condition, then an exact root, a certified interval, or an upper bound.
DimensionResult dimension(const FactorIfs& ifs1, const FactorIfs& ifs2, const DimensionOptions& options = {});

/// Rewrites both factors over one common base when their ratios allow it. Sections that
/// already share a base are returned unchanged.
std::optional<std::pair<Base, std::pair<DigitalSet, DigitalSet>>> common_base(const FactorIfs& ifs1,
                                                                              const FactorIfs& ifs2);

}  // namespace sumsetdim
