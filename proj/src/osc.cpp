#include <algorithm>
#include <deque>
#include <map>

#include "sumsetdim/dimension.hpp"

namespace sumsetdim {

const char* to_string(OscMethod m) {
  switch (m) {
    case OscMethod::SufficientInequality: return "sufficient-inequality";
    case OscMethod::PairwiseInterval: return "pairwise-interval";
    case OscMethod::CutFreeAutomaton: return "cut-free-automaton";
    case OscMethod::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

Rational max_digit(const DigitalSet& d) {
  Rational m = d.blocks().front()[0];
  for (const auto& b : d.blocks())
    for (const auto& x : b.digits()) m = std::max(m, x);
  return m;
}

bool has_negative_digit(const DigitalSet& d) {
  for (const auto& b : d.blocks())
    for (const auto& x : b.digits())
      if (x < 0) return true;
  return false;
}

}  // namespace

OscReport osc_sufficient_check(const DigitalSet& d1, const DigitalSet& d2, const Interval& hull1,
                               const Interval& hull2, std::span<const Block> matchings, bool complete,
                               const Base& base) {
  OscReport r;
  r.A = max_digit(d1);
  r.B = max_digit(d2);
  r.B1 = hull1.width();
  r.B2 = hull2.width();

  for (std::size_t i = 0; i < matchings.size(); ++i) {
    for (std::size_t j = i + 1; j < matchings.size(); ++j) {
      if (matchings[i] == matchings[j]) continue;
      for (const auto& x : matchings[i].digits())
        for (const auto& y : matchings[j].digits()) {
          Rational d = abs(x - y);
          if (!r.c || d < *r.c) r.c = d;
        }
    }
  }

  if (!complete) {
    r.note = "Matching list is truncated; c over a prefix only bounds the full constant from above";
    return r;
  }
  if (has_negative_digit(d1) || has_negative_digit(d2)) {
    r.note = "negative digits; the inequality assumes digits in [0, A] and [0, B]";
    return r;
  }
  if (!r.c || *r.c == 0) {
    r.note = r.c ? "c = 0" : "fewer than two Matchings";
    return r;
  }
  Rational lhs = r.A + r.B + r.B1 + r.B2;
  Rational rhs = *r.c * (base.value() - 1);
  r.satisfied = lhs < rhs;
  r.method = r.satisfied ? OscMethod::SufficientInequality : OscMethod::Inconclusive;
  r.note = "A + B + B1 + B2 = " + to_string(lhs) + (r.satisfied ? " < " : " >= ") + "c (beta - 1) = " +
           to_string(rhs);
  return r;
}

bool osc_interval_check(std::span<const AffineMap> maps, const Interval& hull) {
  if (hull.width() <= 0) return false;
  std::vector<Interval> images;
  images.reserve(maps.size());
  for (const auto& f : maps) {
    if (f.ratio <= 0 || f.ratio >= 1) return false;
    Interval im = image(f, hull);
    if (!hull.contains(im)) return false;
    images.push_back(std::move(im));
  }
  std::sort(images.begin(), images.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < images.size(); ++i)
    if (images[i - 1].hi > images[i].lo) return false;
  return true;
}

namespace {

// Digit-level automaton over cut-free floor pairs. A state records the current block and
// the offset of the next digit on each floor.
struct PairNfa {
  struct State {
    int digit = -1;             // interned emitted digit; -1 for the accepting state
    std::vector<int> next;      // successors after emitting `digit`
    Interval region{0, 0};      // images reachable through this state, in local coordinates
    bool live = false;
  };

  std::vector<State> states;
  std::vector<Rational> digits;  // interned values
  std::vector<int> start;
  int accept = 0;
};

Interval tail_image(const Block& b, std::size_t offset, const Interval& hull, const Base& base) {
  Rational v = 0;
  Rational w = 1;
  for (std::size_t k = offset; k < b.size(); ++k) {
    w /= base.value();
    v += b[k] * w;
  }
  return Interval(v + w * hull.lo, v + w * hull.hi);
}

PairNfa build_pair_nfa(const DigitalSet& d1, const DigitalSet& d2, const Base& base) {
  const auto& b1 = d1.blocks();
  const auto& b2 = d2.blocks();
  const Interval h1 = convex_hull(d1, base);
  const Interval h2 = convex_hull(d2, base);

  PairNfa nfa;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, int> index;
  std::map<Rational, int> digit_index;
  nfa.states.emplace_back();
  nfa.accept = 0;
  nfa.states[0].region = h1 + h2;
  nfa.states[0].live = true;

  for (std::size_t i = 0; i < b1.size(); ++i)
    for (std::size_t o1 = 0; o1 < b1[i].size(); ++o1)
      for (std::size_t j = 0; j < b2.size(); ++j)
        for (std::size_t o2 = 0; o2 < b2[j].size(); ++o2) {
          int id = static_cast<int>(nfa.states.size());
          index[{i, o1, j, o2}] = id;
          PairNfa::State s;
          Rational e = b1[i][o1] + b2[j][o2];
          auto [it, fresh] = digit_index.try_emplace(e, static_cast<int>(nfa.digits.size()));
          if (fresh) nfa.digits.push_back(e);
          s.digit = it->second;
          s.region = tail_image(b1[i], o1, h1, base) + tail_image(b2[j], o2, h2, base);
          nfa.states.push_back(std::move(s));
        }

  for (const auto& [key, id] : index) {
    auto [i, o1, j, o2] = key;
    bool end1 = o1 + 1 == b1[i].size();
    bool end2 = o2 + 1 == b2[j].size();
    auto& next = nfa.states[id].next;
    if (end1 && end2) {
      next.push_back(nfa.accept);
    } else if (end1) {
      for (std::size_t k = 0; k < b1.size(); ++k) next.push_back(index.at({k, 0, j, o2 + 1}));
    } else if (end2) {
      for (std::size_t k = 0; k < b2.size(); ++k) next.push_back(index.at({i, o1 + 1, k, 0}));
    } else {
      next.push_back(index.at({i, o1 + 1, j, o2 + 1}));
    }
  }
  for (std::size_t i = 0; i < b1.size(); ++i)
    for (std::size_t j = 0; j < b2.size(); ++j) nfa.start.push_back(index.at({i, 0, j, 0}));

  // Liveness: can reach the accepting state.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& s : nfa.states) {
      if (s.live) continue;
      for (int n : s.next)
        if (nfa.states[n].live) {
          s.live = true;
          changed = true;
          break;
        }
    }
  }
  return nfa;
}

}  // namespace

AutomatonOscReport osc_cut_free_automaton_check(const DigitalSet& d1, const DigitalSet& d2, const Base& base,
                                                std::size_t state_cap) {
  AutomatonOscReport rep;
  const Interval h1 = convex_hull(d1, base);
  const Interval h2 = convex_hull(d2, base);
  if ((h1 + h2).width() <= 0) {
    rep.reason = "degenerate hull";
    return rep;
  }
  PairNfa nfa = build_pair_nfa(d1, d2, base);

  auto live_only = [&](std::vector<int> v) {
    std::erase_if(v, [&](int s) { return !nfa.states[s].live; });
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  auto region_of = [&](const std::vector<int>& set) {
    Rational lo = nfa.states[set.front()].region.lo;
    Rational hi = nfa.states[set.front()].region.hi;
    for (int s : set) {
      lo = std::min(lo, nfa.states[s].region.lo);
      hi = std::max(hi, nfa.states[s].region.hi);
    }
    return Interval(lo, hi);
  };

  std::map<std::vector<int>, std::size_t> seen;
  std::deque<std::vector<int>> queue;
  auto root = live_only(nfa.start);
  if (root.empty()) {
    rep.reason = "no Matching exists";
    return rep;
  }
  seen.emplace(root, 0);
  queue.push_back(std::move(root));

  while (!queue.empty()) {
    std::vector<int> node = std::move(queue.front());
    queue.pop_front();
    if (std::binary_search(node.begin(), node.end(), nfa.accept)) {
      // An accepted Matching whose image is the whole hull here; longer ones must stay clear of it.
      std::erase(node, nfa.accept);
      if (node.empty()) continue;
      Interval rest = region_of(node);
      const Interval& whole = nfa.states[nfa.accept].region;
      if (rest.lo < whole.hi && whole.lo < rest.hi) {
        rep.states = seen.size();
        rep.reason = "a Matching overlaps a longer Matching sharing its digits as a prefix";
        return rep;
      }
    }

    std::map<int, std::vector<int>> by_digit;
    for (int s : node) {
      auto& bucket = by_digit[nfa.states[s].digit];
      const auto& next = nfa.states[s].next;
      bucket.insert(bucket.end(), next.begin(), next.end());
    }
    std::vector<Interval> children;
    for (auto& [digit, succ] : by_digit) {
      succ = live_only(std::move(succ));
      Interval r = region_of(succ);
      const Rational& e = nfa.digits[digit];
      children.emplace_back((e + r.lo) / base.value(), (e + r.hi) / base.value());
      if (seen.emplace(succ, seen.size()).second) {
        if (seen.size() > state_cap) {
          rep.states = seen.size();
          rep.reason = "state cap " + std::to_string(state_cap) + " reached";
          return rep;
        }
        queue.push_back(succ);
      }
    }
    std::sort(children.begin(), children.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t k = 1; k < children.size(); ++k)
      if (children[k - 1].hi > children[k].lo) {
        rep.states = seen.size();
        rep.reason = "overlapping branches after a common prefix";
        return rep;
      }
  }
  rep.states = seen.size();
  rep.certified = true;
  return rep;
}

}  // namespace sumsetdim
