#include "sumsetdim/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumsetdim {

Base::Base(Rational beta) : beta_(std::move(beta)) {
  beta_.canonicalize();
  if (beta_ <= 1) throw InputError("base must exceed 1");
}

Rational Base::inverse_power(unsigned n) const {
  Rational r = power(n);
  return Rational(r.get_den(), r.get_num());
}

Similitude::Similitude(int exponent_, Rational translation_)
    : exponent(exponent_), translation(std::move(translation_)) {
  if (exponent < 1) throw InputError("exponent must be at least 1");
}

AffineMap to_affine(const Similitude& s, const Base& base) { return {s.ratio(base), s.translation}; }

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo > hi) throw std::invalid_argument("interval with lo > hi");
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval image(const AffineMap& f, const Interval& iv) { return {f(iv.lo), f(iv.hi)}; }

Block::Block(std::vector<Rational> digits) : digits_(std::move(digits)) {
  if (digits_.empty()) throw std::invalid_argument("block must have at least one digit");
  for (auto& d : digits_) d.canonicalize();
}

Block Block::of(std::initializer_list<long> digits) {
  std::vector<Rational> ds;
  ds.reserve(digits.size());
  for (long d : digits) ds.emplace_back(d);
  return Block(std::move(ds));
}

std::string Block::to_string() const {
  bool compact = std::all_of(digits_.begin(), digits_.end(), [](const Rational& d) {
    return d.get_den() == 1 && d >= 0 && d <= 9;
  });
  std::string out = "(";
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += digits_[i].get_str();
  }
  return out + ")";
}

bool operator<(const Block& a, const Block& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

DigitalSet::DigitalSet(std::vector<Block> blocks, Source source) : blocks_(std::move(blocks)), source_(source) {
  if (blocks_.empty()) throw InputError("digital set must contain at least one block");
}

DigitalSet DigitalSet::from_maps(std::span<const Similitude> maps, const Base& base, Source source) {
  std::vector<Block> blocks;
  blocks.reserve(maps.size());
  for (const auto& m : maps) blocks.push_back(block_of_similitude(m, base));
  return DigitalSet(std::move(blocks), source);
}

std::size_t DigitalSet::max_length() const {
  std::size_t m = 0;
  for (const auto& b : blocks_) m = std::max(m, b.size());
  return m;
}

std::vector<Similitude> DigitalSet::similitudes(const Base& base) const {
  std::vector<Similitude> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(similitude_of_block(b, base));
  return out;
}

Block block_of_similitude(const Similitude& sim, const Base& base) {
  std::vector<Rational> digits(static_cast<std::size_t>(sim.exponent), Rational(0));
  digits.back() = base.power(static_cast<unsigned>(sim.exponent)) * sim.translation;
  return Block(std::move(digits));
}

Rational value_of_block(const Block& b, const Base& base) {
  // Horner from the last digit: (d1 + (d2 + ... ) / beta) / beta.
  Rational acc = 0;
  for (auto it = b.digits().rbegin(); it != b.digits().rend(); ++it) acc = (acc + *it) / base.value();
  acc.canonicalize();
  return acc;
}

Block sum_blocks(const Block& b1, const Block& b2) {
  if (b1.size() != b2.size())
    throw std::invalid_argument("sum_blocks: lengths differ (" + std::to_string(b1.size()) + " vs " +
                                std::to_string(b2.size()) + "); align lengths first");
  std::vector<Rational> digits(b1.size());
  for (std::size_t i = 0; i < b1.size(); ++i) digits[i] = b1[i] + b2[i];
  return Block(std::move(digits));
}

Block concat_blocks(std::span<const Block> blocks) {
  if (blocks.empty()) throw std::invalid_argument("concat_blocks: empty sequence");
  std::vector<Rational> digits;
  for (const auto& b : blocks) digits.insert(digits.end(), b.digits().begin(), b.digits().end());
  return Block(std::move(digits));
}

Similitude similitude_of_block(const Block& b, const Base& base) {
  return Similitude(static_cast<int>(b.size()), value_of_block(b, base));
}

Interval convex_hull(std::span<const AffineMap> ifs) {
  if (ifs.empty()) throw std::invalid_argument("convex_hull: empty IFS");
  Rational lo = ifs.front().fixed_point();
  Rational hi = lo;
  for (const auto& f : ifs.subspan(1)) {
    Rational p = f.fixed_point();
    if (p < lo) lo = p;
    if (p > hi) hi = p;
  }
  return {lo, hi};
}

Interval convex_hull(std::span<const Similitude> ifs, const Base& base) {
  std::vector<AffineMap> maps;
  maps.reserve(ifs.size());
  for (const auto& s : ifs) maps.push_back(to_affine(s, base));
  return convex_hull(maps);
}

Interval convex_hull(const DigitalSet& digits, const Base& base) {
  auto sims = digits.similitudes(base);
  return convex_hull(sims, base);
}

}  // namespace sumsetdim
