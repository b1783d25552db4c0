#include "sumsetdim/classify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sumsetdim {

LengthMultiset::LengthMultiset(std::vector<int> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.empty()) throw std::invalid_argument("length multiset must be nonempty");
  for (int l : lengths_)
    if (l < 1) throw std::invalid_argument("block lengths must be positive");
  std::sort(lengths_.begin(), lengths_.end());
}

LengthMultiset LengthMultiset::of(const DigitalSet& d) {
  std::vector<int> lengths;
  for (const auto& b : d.blocks()) lengths.push_back(static_cast<int>(b.size()));
  return LengthMultiset(std::move(lengths));
}

bool is_homogeneous(const LengthMultiset& lengths) { return lengths.min() == lengths.max(); }

std::vector<int> iterated_lengths(const LengthMultiset& lengths, int t) {
  if (t < 1) throw std::invalid_argument("iterated_lengths: t must be at least 1");
  std::vector<int> current = lengths.lengths();
  for (int step = 1; step < t; ++step) {
    std::vector<int> next;
    next.reserve(current.size() * lengths.size());
    for (int a : current)
      for (int b : lengths.lengths()) next.push_back(a + b);
    current = std::move(next);
  }
  std::sort(current.begin(), current.end());
  return current;
}

std::optional<int> multiplier_witness(const LengthMultiset& lengths, int k) {
  if (k < 1) throw std::invalid_argument("multiplier_witness: k must be at least 1");
  const int r = lengths.min() % k;
  for (int l : lengths.lengths())
    if (l % k != r) return std::nullopt;
  return k / std::gcd(r, k);
}

bool is_multiplier_set(const LengthMultiset& lengths, int k) { return multiplier_witness(lengths, k).has_value(); }

namespace {

// Bound for the orientation "homogeneous side of length k, other side `other`", if it applies.
std::optional<int> oriented_bound(const LengthMultiset& homogeneous, const LengthMultiset& other) {
  if (!is_homogeneous(homogeneous)) return std::nullopt;
  const int k = homogeneous.min();
  auto t = multiplier_witness(other, k);
  if (!t) return std::nullopt;
  return *t * std::max(other.max(), k);
}

}  // namespace

Finiteness finiteness(const LengthMultiset& l1, const LengthMultiset& l2) {
  return oriented_bound(l1, l2) || oriented_bound(l2, l1) ? Finiteness::Finite : Finiteness::Infinite;
}

int primitive_length_bound(const LengthMultiset& l1, const LengthMultiset& l2) {
  auto a = oriented_bound(l1, l2);
  auto b = oriented_bound(l2, l1);
  if (a && b) return std::min(*a, *b);
  if (a) return *a;
  if (b) return *b;
  throw std::invalid_argument("primitive_length_bound: the Matching set is infinite");
}

DigitalSet reduce_redundant_blocks(const DigitalSet& d) {
  const auto& blocks = d.blocks();
  std::vector<bool> keep(blocks.size(), true);
  std::vector<std::size_t> order(blocks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Longest first, later repeats before earlier ones.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return blocks[a].size() != blocks[b].size() ? blocks[a].size() > blocks[b].size() : a > b;
  });
  for (std::size_t i : order) {
    const auto& target = blocks[i].digits();
    std::vector<char> reach(target.size() + 1, 0);
    reach[0] = 1;
    for (std::size_t pos = 0; pos < target.size(); ++pos) {
      if (!reach[pos]) continue;
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (j == i || !keep[j]) continue;
        const auto& piece = blocks[j].digits();
        if (pos + piece.size() <= target.size() &&
            std::equal(piece.begin(), piece.end(), target.begin() + static_cast<long>(pos)))
          reach[pos + piece.size()] = 1;
      }
    }
    if (reach[target.size()]) keep[i] = false;
  }
  std::vector<Block> out;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (keep[i]) out.push_back(blocks[i]);
  return DigitalSet(std::move(out), d.source());
}

StructureClass classify_structure(const DigitalSet& d1_in, const DigitalSet& d2_in, const EnumerationOptions& options) {
  DigitalSet d1 = reduce_redundant_blocks(d1_in);
  DigitalSet d2 = reduce_redundant_blocks(d2_in);
  std::size_t dropped = d1_in.size() - d1.size() + d2_in.size() - d2.size();
  auto l1 = LengthMultiset::of(d1);
  auto l2 = LengthMultiset::of(d2);
  if (finiteness(l1, l2) == Finiteness::Finite) {
    const int bound = primitive_length_bound(l1, l2);
    auto ms = matchings_up_to(d1, d2, static_cast<std::size_t>(bound), options);
    ms.complete = true;
    return StructureClass{StructureTag::SelfSimilar, std::move(ms), bound, std::nullopt, dropped};
  }
  return StructureClass{StructureTag::IIFSAttractor, MatchingSet{}, 0, MatchingGenerator(d1, d2, options), dropped};
}

namespace {

// {k, ..., k, 2k} with at least one k.
std::optional<int> one_double_block(const LengthMultiset& l) {
  const auto& v = l.lengths();
  if (v.size() < 2) return std::nullopt;
  const int k = v.front();
  if (v.back() != 2 * k) return std::nullopt;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] != k) return std::nullopt;
  return k;
}

// Refines integers > 1 into a pairwise coprime set generating all of them.
std::vector<mpz_class> coprime_basis(std::vector<mpz_class> xs) {
  xs.erase(std::remove_if(xs.begin(), xs.end(), [](const mpz_class& x) { return x <= 1; }), xs.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i < xs.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < xs.size() && !changed; ++j) {
        mpz_class g = gcd(xs[i], xs[j]);
        if (g == 1) continue;
        mpz_class a = xs[i] / g, b = xs[j] / g;
        xs.erase(xs.begin() + static_cast<long>(j));
        xs.erase(xs.begin() + static_cast<long>(i));
        for (auto* v : {&g, &a, &b})
          if (*v > 1) xs.push_back(*v);
        changed = true;
      }
    }
  }
  return xs;
}

long valuation(mpz_class& x, const mpz_class& p) {
  long e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

}  // namespace

Countability c_countable_sufficient(const LengthMultiset& l1, const LengthMultiset& l2) {
  auto k1 = one_double_block(l1);
  auto k2 = one_double_block(l2);
  return k1 && k2 && *k1 == *k2 ? Countability::Yes : Countability::Unknown;
}

IrrationalAssumption irrational_assumption(const std::vector<Rational>& ratios1, const std::vector<Rational>& ratios2) {
  std::vector<Rational> all(ratios1);
  all.insert(all.end(), ratios2.begin(), ratios2.end());
  if (ratios1.empty() || ratios2.empty()) throw InputError("irrational_assumption: empty ratio list");
  std::vector<mpz_class> parts;
  for (const auto& r : all) {
    if (r <= 0 || r >= 1) throw InputError("ratio " + r.get_str() + " outside (0, 1)");
    parts.push_back(r.get_num());
    parts.push_back(r.get_den());
  }
  const auto basis = coprime_basis(parts);

  // Exponent vector of each ratio over the basis (numerator minus denominator).
  std::vector<std::vector<long>> vecs;
  for (const auto& r : all) {
    mpz_class num = r.get_num(), den = r.get_den();
    std::vector<long> v;
    for (const auto& p : basis) v.push_back(valuation(num, p) - valuation(den, p));
    vecs.push_back(std::move(v));
  }

  long g0 = 0;
  for (long e : vecs.front()) g0 = std::gcd(g0, e);
  std::vector<long> primitive;
  for (long e : vecs.front()) primitive.push_back(e / g0);

  std::vector<long> multiples;
  for (const auto& v : vecs) {
    // v must equal m * primitive with m > 0.
    std::size_t pivot = 0;
    while (primitive[pivot] == 0) ++pivot;
    if (v[pivot] % primitive[pivot] != 0) return {true, std::nullopt, {}, {}};
    long m = v[pivot] / primitive[pivot];
    if (m <= 0) return {true, std::nullopt, {}, {}};
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != m * primitive[i]) return {true, std::nullopt, {}, {}};
    multiples.push_back(m);
  }

  long g = 0;
  for (long m : multiples) g = std::gcd(g, m);
  Rational inv_beta = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    long e = primitive[i] * g;
    Rational p(basis[i]);
    inv_beta *= e >= 0 ? pow(p, static_cast<unsigned>(e)) : 1 / pow(p, static_cast<unsigned>(-e));
  }
  inv_beta.canonicalize();
  IrrationalAssumption out;
  out.holds = false;
  out.base = Base(1 / inv_beta);
  for (std::size_t i = 0; i < multiples.size(); ++i)
    (i < ratios1.size() ? out.exponents1 : out.exponents2).push_back(static_cast<int>(multiples[i] / g));
  return out;
}

}  // namespace sumsetdim
