#include "sumsetdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cut_free.hpp"

namespace sumsetdim {

const char* to_string(DimensionTag t) {
  switch (t) {
    case DimensionTag::Exact: return "Exact";
    case DimensionTag::Interval: return "Interval";
    case DimensionTag::UpperBoundOnly: return "UpperBoundOnly";
    case DimensionTag::PeresShmerkin: return "PeresShmerkin";
  }
  return "?";
}

namespace {

using real = long double;
constexpr real kInf = std::numeric_limits<real>::infinity();

// Compensated sum.
class KahanSum {
 public:
  void add(real v) {
    real y = v - comp_;
    real t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  real value() const { return sum_; }

 private:
  real sum_ = 0;
  real comp_ = 0;
};

// Largest t in [a, b] with pred(t) true, given pred(a) and !pred(b); pred monotone.
template <class Pred>
real bisect_last_true(real a, real b, Pred pred) {
  for (int it = 0; it < 200 && b - a > 0; ++it) {
    real m = a + (b - a) / 2;
    if (m <= a || m >= b) break;
    (pred(m) ? a : b) = m;
  }
  return a;
}

double round_down(real v) {
  double d = static_cast<double>(v);
  return static_cast<real>(d) > v ? std::nextafter(d, -std::numeric_limits<double>::infinity()) : d;
}

double round_up(real v) {
  double d = static_cast<double>(v);
  return static_cast<real>(d) < v ? std::nextafter(d, std::numeric_limits<double>::infinity()) : d;
}

// Solves sum_i w_i^s = 1 where w_i = exp(-a_i) with a_i > 0, by bisection.
double moran_from_logs(const std::vector<real>& a) {
  if (a.size() <= 1) return 0.0;
  auto f = [&](real s) {
    KahanSum sum;
    for (real ai : a) sum.add(std::exp(-ai * s));
    return sum.value();
  };
  real amin = *std::min_element(a.begin(), a.end());
  real hi = std::log(static_cast<real>(a.size())) / amin;
  while (f(hi) > 1) hi *= 2;
  real lo = bisect_last_true(0.0L, hi, [&](real s) { return f(s) > 1; });
  return static_cast<double>(lo);
}

std::vector<int> block_lengths(const DigitalSet& d) {
  std::vector<int> out;
  for (const auto& b : d.blocks()) out.push_back(static_cast<int>(b.size()));
  return out;
}

// Bound on sum_{L > lmax} c_L x^L.
class TailModel {
 public:
  TailModel(const DigitalSet& d1, const DigitalSet& d2, std::size_t lmax)
      : cf_(block_lengths(d1), block_lengths(d2)), lmax_(static_cast<long>(lmax)) {
    build_crossings();
    build_growth(LengthMultiset::of(d1), 0);
    build_growth(LengthMultiset::of(d2), 1);
  }

  real bound(real x) const { return std::min(pair_bound(x), growth_bound(x)); }

  /// Cut-free pair counts N(L) for L <= lmax, an upper bound on c_L.
  const std::vector<real>& pair_counts() const { return ends_; }

 private:
  void push(long p, int s, real w, std::vector<std::vector<real>>& weight) {
    if (s >= 0 && cf_.min_extra(s) == detail::CutFreeLengths::kUnreachable) return;
    if (p <= lmax_) {
      weight[p][s] += w;
    } else {
      cross_[{p, s}] += w;
    }
  }

  void build_crossings() {
    const int ns = cf_.num_states();
    const int maxl = cf_.max_len();
    std::vector<std::vector<real>> weight(lmax_ + 1, std::vector<real>(std::max(ns, 1), 0));
    ends_.assign(lmax_ + 1, 0);

    for (int l1 : cf_.distinct_lengths(0))
      for (int l2 : cf_.distinct_lengths(1)) {
        real w = static_cast<real>(cf_.multiplicity(0, l1)) * cf_.multiplicity(1, l2);
        if (l1 == l2) {
          if (l1 > lmax_) cross_[{l1, -1}] += w;
          else ends_[l1] += w;
        } else if (l1 > l2) {
          push(l1, cf_.state(0, l1 - l2), w, weight);
        } else {
          push(l2, cf_.state(1, l2 - l1), w, weight);
        }
      }

    for (long p = 1; p <= lmax_; ++p)
      for (int leader = 0; leader < 2; ++leader)
        for (int lag = maxl - 1; lag >= 1; --lag) {
          int s = cf_.state(leader, lag);
          real w = weight[p][s];
          if (w == 0) continue;
          int trail = 1 - leader;
          for (int l : cf_.distinct_lengths(trail)) {
            real wm = w * cf_.multiplicity(trail, l);
            if (l < lag) {
              weight[p][cf_.state(leader, lag - l)] += wm;
            } else if (l == lag) {
              ends_[p] += wm;
            } else {
              push(p + l - lag, cf_.state(trail, l - lag), wm, weight);
            }
          }
        }

    // States reachable from a crossing, restricted to live ones.
    std::vector<char> reach(std::max(ns, 0), 0);
    std::vector<int> stack;
    for (const auto& [key, w] : cross_)
      if (key.second >= 0 && !reach[key.second]) {
        reach[key.second] = 1;
        stack.push_back(key.second);
      }
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (int t : successors(s))
        if (!reach[t]) {
          reach[t] = 1;
          stack.push_back(t);
        }
    }
    for (int s = 0; s < ns; ++s)
      if (reach[s]) {
        slot_[s] = static_cast<int>(active_.size());
        active_.push_back(s);
      }
  }

  std::vector<int> successors(int s) const {
    std::vector<int> out;
    int leader = cf_.leader_of(s);
    int lag = cf_.lag_of(s);
    int trail = 1 - leader;
    for (int l : cf_.distinct_lengths(trail)) {
      int t = l < lag ? cf_.state(leader, lag - l) : l > lag ? cf_.state(trail, l - lag) : -1;
      if (t >= 0 && cf_.min_extra(t) != detail::CutFreeLengths::kUnreachable) out.push_back(t);
    }
    return out;
  }

  // Certified supersolution g >= G(x), where G_s(x) sums x^(extra length) over completions
  // from s. Empty when none could be verified.
  std::vector<real> completion_bound(real x) const {
    const std::size_t n = active_.size();
    if (n == 0) return {};
    std::vector<std::vector<real>> m(n, std::vector<real>(n, 0));
    std::vector<real> b(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      int s = active_[i];
      int leader = cf_.leader_of(s);
      int lag = cf_.lag_of(s);
      int trail = 1 - leader;
      for (int l : cf_.distinct_lengths(trail)) {
        real mult = static_cast<real>(cf_.multiplicity(trail, l));
        if (l == lag) {
          b[i] += mult;
          continue;
        }
        int t = l < lag ? cf_.state(leader, lag - l) : cf_.state(trail, l - lag);
        auto it = slot_.find(t);
        if (it == slot_.end()) continue;  // dead state: contributes nothing
        m[i][it->second] += l < lag ? mult : mult * std::pow(x, static_cast<real>(l - lag));
      }
    }

    // Solve (I - M) g = b with partial pivoting.
    std::vector<std::vector<real>> a(n, std::vector<real>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1 : 0) - m[i][j];
      a[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < n; ++r)
        if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
      if (a[piv][c] == 0) return {};
      std::swap(a[piv], a[c]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a[r][c] == 0) continue;
        real f = a[r][c] / a[c][c];
        for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
      }
    }
    std::vector<real> g(n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = a[i][n] / a[i][i];
      if (!(g[i] >= 0) || !std::isfinite(g[i])) return {};
    }

    // G is the least fixed point of g -> b + M g, so any g with b + M g <= g bounds it.
    for (real eps : {1e-12L, 1e-9L, 1e-6L, 1e-3L}) {
      std::vector<real> h(n);
      for (std::size_t i = 0; i < n; ++i) h[i] = g[i] * (1 + eps) + std::numeric_limits<real>::min();
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        real v = b[i];
        for (std::size_t j = 0; j < n; ++j) v += m[i][j] * h[j];
        ok = v <= h[i];
      }
      if (ok) return h;
    }
    return {};
  }

  real pair_bound(real x) const {
    if (cross_.empty()) return 0;
    std::vector<real> g = completion_bound(x);
    bool need_g = std::any_of(cross_.begin(), cross_.end(), [](const auto& kv) { return kv.first.second >= 0; });
    if (need_g && g.empty()) return kInf;
    KahanSum sum;
    for (const auto& [key, w] : cross_) {
      auto [p, s] = key;
      real factor = s < 0 ? 1 : g[slot_.at(s)];
      sum.add(w * std::pow(x, static_cast<real>(p)) * factor);
    }
    return sum.value() * (1 + 1e-12L);
  }

  void build_growth(const LengthMultiset& lengths, int side) {
    real lambda = concat_growth_rate(lengths);
    auto char_sum = [&](real lam) {
      KahanSum s;
      for (int l : lengths.lengths()) s.add(std::pow(lam, -static_cast<real>(l)));
      return s.value();
    };
    while (char_sum(lambda) > 1) lambda *= 1 + 1e-15L;
    std::vector<real> count(lmax_ + 1, 0);
    count[0] = 1;
    for (long L = 1; L <= lmax_; ++L)
      for (int l : lengths.lengths())
        if (l <= L) count[L] += count[L - l];
    // m(L) <= C lambda^L for L > lmax follows by induction from the last max_len values.
    real c = 0;
    for (long L = std::max(0L, lmax_ + 1 - lengths.max()); L <= lmax_; ++L)
      c = std::max(c, count[L] / std::pow(lambda, static_cast<real>(L)));
    lambda_[side] = lambda;
    growth_c_[side] = 2 * c;
  }

  real growth_bound(real x) const {
    real q = lambda_[0] * lambda_[1] * x;
    if (!(q < 1)) return kInf;
    return growth_c_[0] * growth_c_[1] * std::pow(q, static_cast<real>(lmax_ + 1)) / (1 - q) * (1 + 1e-12L);
  }

  detail::CutFreeLengths cf_;
  long lmax_;
  std::map<std::pair<long, int>, real> cross_;  // (lead position, state or -1 for complete) -> weight
  std::vector<real> ends_;
  std::vector<int> active_;
  std::map<int, int> slot_;
  real lambda_[2] = {1, 1};
  real growth_c_[2] = {0, 0};
};

}  // namespace

double moran_root(std::span<const int> lengths, const Base& base) {
  real lb = std::log(static_cast<real>(base.as_double()));
  std::vector<real> a;
  for (int l : lengths) {
    if (l < 1) throw std::invalid_argument("lengths must be positive");
    a.push_back(l * lb);
  }
  if (a.empty()) throw std::invalid_argument("no maps");
  return moran_from_logs(a);
}

double moran_root_ratios(std::span<const double> ratios) {
  std::vector<real> a;
  for (double r : ratios) {
    if (!(r > 0 && r < 1)) throw std::invalid_argument("ratio outside (0, 1)");
    a.push_back(-std::log(static_cast<real>(r)));
  }
  if (a.empty()) throw std::invalid_argument("no maps");
  return moran_from_logs(a);
}

double concat_growth_rate(const LengthMultiset& lengths) {
  auto f = [&](real lam) {
    KahanSum s;
    for (int l : lengths.lengths()) s.add(std::pow(lam, -static_cast<real>(l)));
    return s.value();
  };
  if (f(1) <= 1) return 1.0;
  real hi = static_cast<real>(lengths.size());
  real lo = bisect_last_true(1.0L, hi, [&](real lam) { return f(lam) > 1; });
  return round_up(lo * (1 + 4 * std::numeric_limits<real>::epsilon()));
}

double iifs_tail_bound(const DigitalSet& d1, const DigitalSet& d2, const Base& base, std::size_t lmax, double t) {
  TailModel tail(d1, d2, lmax);
  return static_cast<double>(tail.bound(std::pow(static_cast<real>(base.as_double()), -static_cast<real>(t))));
}

IifsBounds iifs_bounds_at(const MatchingSet& ms, const DigitalSet& d1, const DigitalSet& d2, const Base& base) {
  if (ms.empty()) throw std::invalid_argument("no Matchings");
  const real beta = static_cast<real>(base.as_double());
  const auto counts = matching_counts(ms);
  auto series = [&](real t) {
    real x = std::pow(beta, -t);
    KahanSum s;
    for (auto [len, c] : counts) s.add(static_cast<real>(c) * std::pow(x, static_cast<real>(len)));
    return s.value();
  };
  constexpr real margin = 1e-15L;

  IifsBounds out;
  out.lmax = ms.cutoff;

  real lo = 0;
  if (series(0) > 1 + margin) {
    real b = 1;
    while (series(b) > 1 + margin) b *= 2;
    lo = bisect_last_true(0.0L, b, [&](real t) { return series(t) > 1 + margin; });
  }

  if (ms.complete) {
    // Nothing is omitted: same bisection from the other side.
    real b = std::max<real>(lo, 1e-6L);
    while (series(b) * (1 + margin) > 1) b *= 2;
    real hi = b;
    if (lo > 0 || series(0) > 1) {
      real a = lo;
      for (int it = 0; it < 200; ++it) {
        real m = a + (hi - a) / 2;
        if (m <= a || m >= hi) break;
        (series(m) * (1 + margin) <= 1 ? hi : a) = m;
      }
    } else {
      hi = 0;
    }
    out.lo = round_down(lo);
    out.hi = round_up(hi);
    out.tail_at_hi = 0;
    return out;
  }

  TailModel tail(d1, d2, ms.cutoff);
  auto certified_above = [&](real t) {
    real x = std::pow(beta, -t);
    return series(t) * (1 + margin) + tail.bound(x) <= 1;
  };
  real step = 1.0L / 64;
  real b = lo + step;
  while (!certified_above(b)) {
    step *= 2;
    b = lo + step;
    if (b > 64) {
      out.lo = round_down(lo);
      out.hi = std::numeric_limits<double>::infinity();
      out.tail_at_hi = std::numeric_limits<double>::infinity();
      return out;
    }
  }
  real a = lo;
  for (int it = 0; it < 200; ++it) {
    real m = a + (b - a) / 2;
    if (m <= a || m >= b) break;
    (certified_above(m) ? b : a) = m;
  }
  out.lo = round_down(lo);
  out.hi = round_up(b);
  out.tail_at_hi = static_cast<double>(tail.bound(std::pow(beta, -b)));
  return out;
}

IifsBounds iifs_dimension_bounds(const DigitalSet& d1, const DigitalSet& d2, const Base& base, std::size_t lmax,
                                 double tol, const EnumerationOptions& options, std::size_t max_lmax) {
  std::optional<IifsBounds> best;
  for (std::size_t L = std::max<std::size_t>(lmax, 1);; L *= 2) {
    MatchingSet ms;
    try {
      ms = matchings_up_to(d1, d2, L, options);
    } catch (const CapExceeded&) {
      if (!best) throw;
      best->cap_hit = true;
      return *best;
    }
    IifsBounds b = iifs_bounds_at(ms, d1, d2, base);
    if (best) {
      b.lo = std::max(b.lo, best->lo);
      b.hi = std::min(b.hi, best->hi);
    }
    b.converged = b.hi - b.lo <= tol;
    best = b;
    if (b.converged || L >= max_lmax) return b;
  }
}

std::optional<std::pair<Base, std::pair<DigitalSet, DigitalSet>>> common_base(const FactorIfs& ifs1,
                                                                              const FactorIfs& ifs2) {
  if (ifs1.base == ifs2.base) return std::make_pair(ifs1.base, std::make_pair(ifs1.digits, ifs2.digits));
  auto ratios = [](const FactorIfs& f) {
    std::vector<Rational> r;
    for (const auto& b : f.digits.blocks()) r.push_back(f.base.inverse_power(static_cast<unsigned>(b.size())));
    return r;
  };
  IrrationalAssumption ia = irrational_assumption(ratios(ifs1), ratios(ifs2));
  if (ia.holds) return std::nullopt;
  const Base& beta = *ia.base;
  auto convert = [&](const FactorIfs& f, const std::vector<int>& exps) {
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < f.digits.size(); ++i) {
      Similitude s(exps[i], value_of_block(f.digits.blocks()[i], f.base));
      blocks.push_back(block_of_similitude(s, beta));
    }
    return DigitalSet(std::move(blocks), f.digits.source());
  };
  return std::make_pair(beta, std::make_pair(convert(ifs1, ia.exponents1), convert(ifs2, ia.exponents2)));
}

namespace {

std::vector<AffineMap> affine_maps(std::span<const Block> blocks, const Base& base) {
  std::vector<AffineMap> maps;
  for (const auto& b : blocks) maps.push_back(to_affine(similitude_of_block(b, base), base));
  return maps;
}

DimensionResult peres_shmerkin(const FactorIfs& ifs1, const FactorIfs& ifs2) {
  DimensionResult r;
  r.structure = "PeresShmerkin";
  double s[2];
  bool osc[2];
  const FactorIfs* f[2] = {&ifs1, &ifs2};
  for (int i = 0; i < 2; ++i) {
    std::vector<int> lens = block_lengths(f[i]->digits);
    s[i] = moran_root(lens, f[i]->base);
    auto maps = affine_maps(f[i]->digits.blocks(), f[i]->base);
    osc[i] = osc_interval_check(maps, convex_hull(maps));
  }
  r.value = std::min(1.0, s[0] + s[1]);
  r.lo = r.hi = r.value;
  if (osc[0] && osc[1]) {
    r.tag = DimensionTag::PeresShmerkin;
    r.certificates.osc_method = "pairwise-interval per factor";
    r.certificates.summary = "irrational log-ratio; min(1, s1 + s2) with both factors under OSC";
  } else {
    r.tag = DimensionTag::UpperBoundOnly;
    r.lo = 0;
    r.certificates.summary = "irrational log-ratio; a factor failed the OSC check, similarity dimensions only bound it";
  }
  r.certificates.notes.push_back("s1 = " + std::to_string(s[0]) + ", s2 = " + std::to_string(s[1]));
  return r;
}

DimensionResult finite_case(const DigitalSet& d1, const DigitalSet& d2, const Base& base, const MatchingSet& ms) {
  DimensionResult r;
  r.structure = "SelfSimilar";
  std::vector<Block> matchings = ms.all();

  // Distinct strings can define the same map; the sum is the attractor of the distinct maps.
  std::vector<std::pair<int, Rational>> seen;
  std::vector<Block> distinct;
  for (const auto& b : matchings) {
    Similitude s = similitude_of_block(b, base);
    std::pair<int, Rational> key{s.exponent, s.translation};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    distinct.push_back(b);
  }
  if (distinct.size() < matchings.size())
    r.certificates.notes.push_back(std::to_string(matchings.size() - distinct.size()) +
                                   " Matchings repeat an existing map");

  std::vector<int> lens;
  for (const auto& b : distinct) lens.push_back(static_cast<int>(b.size()));
  double s = moran_root(lens, base);
  r.value = r.lo = r.hi = s;
  r.certificates.lmax = ms.cutoff;

  if (distinct.size() == 1) {
    r.tag = DimensionTag::Exact;
    r.certificates.osc_method = "single-map";
    r.certificates.summary = "single map; the sum is one point";
    return r;
  }

  const Interval h1 = convex_hull(d1, base);
  const Interval h2 = convex_hull(d2, base);
  OscReport suff = osc_sufficient_check(d1, d2, h1, h2, distinct, true, base);
  r.certificates.notes.push_back("sufficient inequality: " + suff.note);
  if (suff.satisfied) {
    r.tag = DimensionTag::Exact;
    r.certificates.osc_method = to_string(OscMethod::SufficientInequality);
  } else if (osc_interval_check(affine_maps(distinct, base), h1 + h2)) {
    r.tag = DimensionTag::Exact;
    r.certificates.osc_method = to_string(OscMethod::PairwiseInterval);
  } else {
    r.tag = DimensionTag::UpperBoundOnly;
    r.lo = 0;
    r.certificates.osc_method = to_string(OscMethod::Inconclusive);
  }
  r.certificates.summary = r.tag == DimensionTag::Exact
                               ? "OSC: " + r.certificates.osc_method + "; Moran root of the finite Matching IFS"
                               : "OSC not verified; the Moran root is an upper bound";
  return r;
}

DimensionResult infinite_case(const DigitalSet& d1, const DigitalSet& d2, const Base& base,
                              const DimensionOptions& options) {
  DimensionResult r;
  r.structure = "IIFSAttractor";
  IifsBounds b = iifs_dimension_bounds(d1, d2, base, options.lmax, options.tol, options.enumeration,
                                       std::max(options.max_lmax, options.lmax));
  r.lo = b.lo;
  r.hi = b.hi;
  r.value = b.hi;
  r.certificates.lmax = b.lmax;
  r.certificates.tail_bound = b.tail_at_hi;
  r.cap_hit = b.cap_hit;
  if (b.cap_hit) r.certificates.notes.push_back("enumeration cap reached beyond L_max " + std::to_string(b.lmax));

  MatchingSet ms = matchings_up_to(d1, d2, options.lmax, options.enumeration);
  std::vector<Block> truncated = ms.all();
  const Interval h1 = convex_hull(d1, base);
  const Interval h2 = convex_hull(d2, base);
  bool trunc_ok = osc_interval_check(affine_maps(truncated, base), h1 + h2);
  OscReport suff = osc_sufficient_check(d1, d2, h1, h2, truncated, false, base);
  AutomatonOscReport full = osc_cut_free_automaton_check(d1, d2, base, options.automaton_state_cap);

  std::string summary = trunc_ok ? "OSC: pairwise-interval on truncation" : "OSC: truncation overlaps";
  if (std::isfinite(r.hi)) summary += "; tail bound applied";
  if (full.certified && trunc_ok && std::isfinite(r.hi)) {
    r.tag = DimensionTag::Interval;
    r.certificates.osc_method = to_string(OscMethod::CutFreeAutomaton);
    summary += "; full-system OSC: cut-free automaton";
  } else {
    r.tag = DimensionTag::UpperBoundOnly;
    r.certificates.osc_method = trunc_ok ? "pairwise-interval (truncation only)" : "inconclusive";
    r.certificates.notes.push_back("full-system OSC not certified: " +
                                   (full.reason.empty() ? std::string("truncation overlaps") : full.reason));
  }
  r.certificates.summary = summary;
  if (!b.converged)
    r.certificates.notes.push_back("interval width " + std::to_string(b.hi - b.lo) + " exceeds tolerance at L_max " +
                                   std::to_string(b.lmax));
  if (c_countable_sufficient(LengthMultiset::of(d1), LengthMultiset::of(d2)) == Countability::Unknown)
    r.certificates.notes.push_back(
        "dimension of E; equals dim(K1+K2) if the closure adds only countably many points");
  if (suff.c) r.certificates.notes.push_back("c over the truncation = " + to_string(*suff.c));
  return r;
}

}  // namespace

DimensionResult dimension(const FactorIfs& ifs1, const FactorIfs& ifs2, const DimensionOptions& options) {
  auto cb = common_base(ifs1, ifs2);
  if (!cb) return peres_shmerkin(ifs1, ifs2);
  const Base& base = cb->first;
  const DigitalSet d1 = reduce_redundant_blocks(cb->second.first);
  const DigitalSet d2 = reduce_redundant_blocks(cb->second.second);
  StructureClass cls = classify_structure(d1, d2, options.enumeration);
  DimensionResult r = cls.tag == StructureTag::SelfSimilar ? finite_case(d1, d2, base, cls.finite_ifs)
                                                           : infinite_case(d1, d2, base, options);
  std::size_t dropped = cb->second.first.size() - d1.size() + cb->second.second.size() - d2.size();
  if (dropped > 0)
    r.certificates.notes.push_back(std::to_string(dropped) + " blocks dropped as concatenations of other blocks");
  return r;
}

}  // namespace sumsetdim
