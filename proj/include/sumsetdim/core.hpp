#pragma once

#include <span>
#include <string>
#include <vector>

#include "sumsetdim/rational.hpp"

namespace sumsetdim {

/// Common contraction base; every map in a problem has ratio base^-n.
class Base {
 public:
  explicit Base(Rational beta);

  const Rational& value() const { return beta_; }
  double as_double() const { return beta_.get_d(); }
  Rational power(unsigned n) const { return pow(beta_, n); }
  Rational inverse_power(unsigned n) const;

  friend bool operator==(const Base& a, const Base& b) { return a.beta_ == b.beta_; }

 private:
  Rational beta_;
};

/// x -> base^-exponent * x + translation.
struct Similitude {
  Similitude(int exponent, Rational translation);

  int exponent;
  Rational translation;

  Rational ratio(const Base& base) const { return base.inverse_power(static_cast<unsigned>(exponent)); }
  Rational operator()(const Rational& x, const Base& base) const { return ratio(base) * x + translation; }

  friend bool operator==(const Similitude& a, const Similitude& b) {
    return a.exponent == b.exponent && a.translation == b.translation;
  }
};

/// x -> ratio * x + offset with an arbitrary rational ratio in (0, 1).
struct AffineMap {
  Rational ratio;
  Rational offset;

  Rational operator()(const Rational& x) const { return ratio * x + offset; }
  Rational fixed_point() const { return offset / (1 - ratio); }
};

AffineMap to_affine(const Similitude& s, const Base& base);

struct Interval {
  Interval(Rational lo, Rational hi);

  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// Minkowski sum.
Interval operator+(const Interval& a, const Interval& b);

/// Image of an interval under an increasing affine map.
Interval image(const AffineMap& f, const Interval& iv);

/// Finite digit string. Digits are arbitrary rationals; never rewritten after construction.
class Block {
 public:
  explicit Block(std::vector<Rational> digits);
  Block(std::initializer_list<Rational> digits) : Block(std::vector<Rational>(digits)) {}

  /// Convenience for integer digit strings, e.g. Block::of({2, 4, 2}).
  static Block of(std::initializer_list<long> digits);

  std::size_t size() const { return digits_.size(); }
  const std::vector<Rational>& digits() const { return digits_; }
  const Rational& operator[](std::size_t i) const { return digits_[i]; }

  /// "(242)" when every digit is a single decimal digit, otherwise "(0,16)".
  std::string to_string() const;

  friend bool operator==(const Block& a, const Block& b) { return a.digits_ == b.digits_; }
  /// Shorter first, then lexicographic by digit value.
  friend bool operator<(const Block& a, const Block& b);

 private:
  std::vector<Rational> digits_;
};

enum class Source { First, Second };

/// Ordered, nonempty list of blocks attached to one IFS.
class DigitalSet {
 public:
  DigitalSet(std::vector<Block> blocks, Source source);

  static DigitalSet from_maps(std::span<const Similitude> maps, const Base& base, Source source);

  const std::vector<Block>& blocks() const { return blocks_; }
  Source source() const { return source_; }
  std::size_t size() const { return blocks_.size(); }
  std::size_t max_length() const;

  std::vector<Similitude> similitudes(const Base& base) const;

 private:
  std::vector<Block> blocks_;
  Source source_;
};

/// (0, ..., 0, base^n * a) of length n.
Block block_of_similitude(const Similitude& sim, const Base& base);

/// sum_k d_k base^-k.
Rational value_of_block(const Block& b, const Base& base);

/// Digitwise sum; throws std::invalid_argument when the lengths differ.
Block sum_blocks(const Block& b1, const Block& b2);

/// Joins digit strings in order; throws std::invalid_argument on an empty sequence.
Block concat_blocks(std::span<const Block> blocks);

/// x -> base^-len * x + value(b).
Similitude similitude_of_block(const Block& b, const Base& base);

/// [min fixed point, max fixed point] of the attractor.
Interval convex_hull(std::span<const Similitude> ifs, const Base& base);
Interval convex_hull(std::span<const AffineMap> ifs);

Interval convex_hull(const DigitalSet& digits, const Base& base);

}  // namespace sumsetdim
