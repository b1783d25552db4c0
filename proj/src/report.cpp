#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "sumsetdim/classify.hpp"
#include "sumsetdim/cli.hpp"
#include "sumsetdim/oracle.hpp"

namespace sumsetdim {

std::string format_g12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string format_directed(double x, bool up) {
  if (!std::isfinite(x) || x == 0) return format_g12(x);
  std::string s = format_g12(x);
  double y = std::strtod(s.c_str(), nullptr);
  if (up ? y >= x : y <= x) return s;
  // Step one unit in the twelfth significant digit.
  double unit = std::pow(10.0, std::floor(std::log10(std::fabs(x))) - 11);
  for (int k = 1; k < 4; ++k) {
    s = format_g12(up ? y + k * unit : y - k * unit);
    double z = std::strtod(s.c_str(), nullptr);
    if (up ? z >= x : z <= x) return s;
  }
  return format_g12(x);
}

using KeyValues = std::map<std::string, std::string>;

struct Output {
  std::ostringstream human;
  KeyValues kv;
  std::vector<std::string> series;

  std::string render(bool machine) const {
    if (!machine) return human.str();
    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    for (const auto& s : series) out += "series = " + s + "\n";
    return out;
  }
};

std::string join_lengths(const LengthMultiset& l) {
  std::string out;
  for (int v : l.lengths()) out += (out.empty() ? "" : " ") + std::to_string(v);
  return out;
}

std::string padded(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%03zu", n);
  return buf;
}

struct Effective {
  std::size_t lmax;
  double tol;
  std::size_t cap;
  std::size_t depth;
};

Effective effective(const ProblemSpec& problem, const RunFlags& flags) {
  return Effective{flags.lmax.value_or(problem.options.lmax.value_or(40)),
                   flags.tol.value_or(problem.options.tol.value_or(1e-3)),
                   flags.cap.value_or(problem.options.cap.value_or(10'000'000)),
                   flags.depth.value_or(problem.options.depth.value_or(8))};
}

constexpr std::size_t kDisplayPerLength = 20;

int cmd_classify(const ProblemSpec& problem, const Effective& eff, Output& o) {
  FactorIfs f1 = problem.factor(1);
  FactorIfs f2 = problem.factor(2);
  auto cb = common_base(f1, f2);
  if (!cb) {
    o.human << "structure: not classified (log-ratios are irrational)\n"
            << "irrational assumption: holds\n";
    o.kv["structure"] = "unclassified";
    o.kv["irrational_assumption"] = "holds";
    o.kv["lengths1"] = join_lengths(LengthMultiset::of(f1.digits));
    o.kv["lengths2"] = join_lengths(LengthMultiset::of(f2.digits));
    return 0;
  }
  const Base& base = cb->first;
  EnumerationOptions opt;
  opt.candidate_cap = eff.cap;
  StructureClass cls = classify_structure(cb->second.first, cb->second.second, opt);
  DigitalSet d1 = reduce_redundant_blocks(cb->second.first);
  DigitalSet d2 = reduce_redundant_blocks(cb->second.second);
  LengthMultiset l1 = LengthMultiset::of(d1);
  LengthMultiset l2 = LengthMultiset::of(d2);
  bool finite = cls.tag == StructureTag::SelfSimilar;
  bool countable = c_countable_sufficient(l1, l2) == Countability::Yes;

  if (finite) {
    o.human << "structure: SelfSimilar, " << cls.finite_ifs.size() << " maps\n";
  } else {
    o.human << "structure: IIFSAttractor, infinitely many maps\n";
  }
  o.human << "base: " << to_string(base.value()) << "\n"
          << "lengths1: {" << join_lengths(l1) << "}\n"
          << "lengths2: {" << join_lengths(l2) << "}\n"
          << "finiteness: " << (finite ? "Finite" : "Infinite") << "\n";
  if (finite) o.human << "L*: " << cls.length_bound << "\n";
  o.human << "irrational assumption: fails (common base " << to_string(base.value()) << ")\n"
          << "countable C (sufficient test): " << (countable ? "yes" : "unknown") << "\n";
  if (cls.dropped_blocks > 0)
    o.human << "dropped blocks: " << cls.dropped_blocks << " (concatenations of other blocks)\n";
  if (finite) {
    o.human << "maps:\n";
    for (const auto& b : cls.finite_ifs.all()) {
      Similitude s = similitude_of_block(b, base);
      o.human << "  " << b.to_string() << "  x -> x/" << to_string(base.power(static_cast<unsigned>(s.exponent)))
              << " + " << to_string(s.translation) << "\n";
    }
  }

  o.kv["structure"] = finite ? "SelfSimilar" : "IIFSAttractor";
  o.kv["maps"] = finite ? std::to_string(cls.finite_ifs.size()) : "infinite";
  o.kv["base"] = to_string(base.value());
  o.kv["lengths1"] = join_lengths(l1);
  o.kv["lengths2"] = join_lengths(l2);
  o.kv["finiteness"] = finite ? "Finite" : "Infinite";
  if (finite) o.kv["length_bound"] = std::to_string(cls.length_bound);
  o.kv["irrational_assumption"] = "fails";
  o.kv["countable"] = countable ? "yes" : "unknown";
  o.kv["dropped_blocks"] = std::to_string(cls.dropped_blocks);
  if (finite) {
    std::size_t i = 0;
    for (const auto& b : cls.finite_ifs.all()) {
      Similitude s = similitude_of_block(b, base);
      o.kv["map." + padded(++i)] = std::to_string(s.exponent) + ", " + to_string(s.translation);
    }
  }
  return 0;
}

int cmd_matchings(const ProblemSpec& problem, const Effective& eff, Output& o) {
  FactorIfs f1 = problem.factor(1);
  FactorIfs f2 = problem.factor(2);
  auto cb = common_base(f1, f2);
  if (!cb) throw InputError("no common base: Matchings are undefined when the log-ratios are irrational");
  EnumerationOptions opt;
  opt.candidate_cap = eff.cap;
  const DigitalSet& d1 = cb->second.first;
  const DigitalSet& d2 = cb->second.second;
  MatchingSet ms = matchings_up_to(d1, d2, eff.lmax, opt);

  LengthMultiset l1 = LengthMultiset::of(reduce_redundant_blocks(d1));
  LengthMultiset l2 = LengthMultiset::of(reduce_redundant_blocks(d2));
  bool complete = false;
  if (finiteness(l1, l2) == Finiteness::Finite)
    complete = eff.lmax >= static_cast<std::size_t>(primitive_length_bound(l1, l2));

  o.human << "L    c_L  Matchings\n";
  for (const auto& [len, blocks] : ms.by_length) {
    char head[32];
    std::snprintf(head, sizeof head, "%-4zu %-4zu", len, blocks.size());
    o.human << head;
    std::string strings;
    for (std::size_t i = 0; i < blocks.size() && i < kDisplayPerLength; ++i) strings += " " + blocks[i].to_string();
    if (blocks.size() > kDisplayPerLength) strings += " ...";
    o.human << strings << "\n";
    o.kv["strings." + padded(len)] = strings.empty() ? "" : strings.substr(1);
    o.series.push_back(std::to_string(len) + ", " + std::to_string(blocks.size()));
  }
  o.human << "total: " << ms.size() << " up to L = " << eff.lmax << "\n"
          << "complete: " << (complete ? "yes" : "no") << "\n";
  o.kv["count"] = std::to_string(ms.size());
  o.kv["lmax"] = std::to_string(eff.lmax);
  o.kv["complete"] = complete ? "yes" : "no";
  return 0;
}

int cmd_dim(const ProblemSpec& problem, const Effective& eff, Output& o) {
  DimensionOptions opt;
  opt.lmax = eff.lmax;
  opt.tol = eff.tol;
  opt.enumeration.candidate_cap = eff.cap;
  DimensionResult r = dimension(problem.factor(1), problem.factor(2), opt);

  const bool interval = r.tag == DimensionTag::Interval;
  o.human << "dimension: " << to_string(r.tag) << " ";
  if (interval) o.human << "[" << format_down(r.lo) << ", " << format_up(r.hi) << "]\n";
  else if (r.tag == DimensionTag::UpperBoundOnly) o.human << "<= " << format_up(r.value) << "\n";
  else o.human << format_g12(r.value) << "\n";
  o.human << "structure: " << r.structure << "\n"
          << "certificate: " << r.certificates.summary << "\n"
          << "osc method: " << r.certificates.osc_method << "\n";
  if (r.structure == "IIFSAttractor") {
    o.human << "bounds: [" << format_down(r.lo) << ", " << format_up(r.hi) << "]\n"
            << "L_max: " << r.certificates.lmax << "\n"
            << "tail bound at hi: " << format_g12(r.certificates.tail_bound) << "\n";
  }
  for (const auto& n : r.certificates.notes) o.human << "note: " << n << "\n";

  o.kv["tag"] = to_string(r.tag);
  o.kv["value"] = r.tag == DimensionTag::UpperBoundOnly ? format_up(r.value) : format_g12(r.value);
  o.kv["lo"] = format_down(r.lo);
  o.kv["hi"] = format_up(r.hi);
  o.kv["structure"] = r.structure;
  o.kv["osc_method"] = r.certificates.osc_method;
  o.kv["lmax"] = std::to_string(r.certificates.lmax);
  o.kv["tail_bound"] = format_up(r.certificates.tail_bound);
  o.kv["summary"] = r.certificates.summary;
  o.kv["cap_hit"] = r.cap_hit ? "yes" : "no";
  for (std::size_t i = 0; i < r.certificates.notes.size(); ++i) o.kv["note." + padded(i + 1)] = r.certificates.notes[i];
  return r.cap_hit ? 2 : 0;
}

std::vector<AffineMap> maps_of(std::span<const Block> blocks, const Base& base) {
  std::vector<AffineMap> out;
  for (const auto& b : blocks) out.push_back(to_affine(similitude_of_block(b, base), base));
  return out;
}

int cmd_osc(const ProblemSpec& problem, const Effective& eff, Output& o) {
  FactorIfs f1 = problem.factor(1);
  FactorIfs f2 = problem.factor(2);
  auto cb = common_base(f1, f2);
  if (!cb) {
    bool ok[2];
    const FactorIfs* f[2] = {&f1, &f2};
    for (int i = 0; i < 2; ++i) {
      auto maps = maps_of(f[i]->digits.blocks(), f[i]->base);
      ok[i] = osc_interval_check(maps, convex_hull(maps));
      o.human << "factor " << i + 1 << " pairwise interval: " << (ok[i] ? "holds" : "fails") << "\n";
      o.kv["factor" + std::to_string(i + 1) + "_pairwise_interval"] = ok[i] ? "holds" : "fails";
    }
    return 0;
  }
  const Base& base = cb->first;
  DigitalSet d1 = reduce_redundant_blocks(cb->second.first);
  DigitalSet d2 = reduce_redundant_blocks(cb->second.second);
  EnumerationOptions opt;
  opt.candidate_cap = eff.cap;
  StructureClass cls = classify_structure(d1, d2, opt);
  bool finite = cls.tag == StructureTag::SelfSimilar;
  MatchingSet ms = finite ? cls.finite_ifs : matchings_up_to(d1, d2, eff.lmax, opt);
  std::vector<Block> matchings = ms.all();

  Interval h1 = convex_hull(d1, base);
  Interval h2 = convex_hull(d2, base);
  OscReport rep = osc_sufficient_check(d1, d2, h1, h2, matchings, finite, base);
  bool pairwise = osc_interval_check(maps_of(matchings, base), h1 + h2);
  std::optional<AutomatonOscReport> automaton;
  if (!finite) automaton = osc_cut_free_automaton_check(d1, d2, base);

  std::string verdict;
  if (rep.satisfied) verdict = "holds (sufficient-inequality)";
  else if (finite && pairwise) verdict = "holds (pairwise-interval)";
  else if (!finite && pairwise && automaton->certified) verdict = "holds (cut-free-automaton)";
  else verdict = "not verified";

  o.human << "A = " << to_string(rep.A) << "\n"
          << "B = " << to_string(rep.B) << "\n"
          << "B1 = " << to_string(rep.B1) << "\n"
          << "B2 = " << to_string(rep.B2) << "\n"
          << "c = " << (rep.c ? to_string(*rep.c) : std::string("undefined")) << "\n"
          << "sufficient inequality: " << (rep.satisfied ? "holds" : "inconclusive") << " (" << rep.note << ")\n"
          << "pairwise interval" << (finite ? "" : " on truncation L <= " + std::to_string(eff.lmax)) << ": "
          << (pairwise ? "holds" : "fails") << "\n";
  if (automaton)
    o.human << "cut-free automaton: " << (automaton->certified ? "certified" : "not certified") << " ("
            << automaton->states << " states" << (automaton->reason.empty() ? "" : "; " + automaton->reason) << ")\n";
  o.human << "verdict: OSC " << verdict << "\n";

  o.kv["A"] = to_string(rep.A);
  o.kv["B"] = to_string(rep.B);
  o.kv["B1"] = to_string(rep.B1);
  o.kv["B2"] = to_string(rep.B2);
  o.kv["c"] = rep.c ? to_string(*rep.c) : "undefined";
  o.kv["satisfied"] = rep.satisfied ? "yes" : "no";
  o.kv["method"] = to_string(rep.method);
  o.kv["note"] = rep.note;
  o.kv["pairwise_interval"] = pairwise ? "holds" : "fails";
  if (automaton) o.kv["automaton"] = automaton->certified ? "certified" : "not certified";
  o.kv["verdict"] = verdict;
  return 0;
}

int cmd_boxcount(const ProblemSpec& problem, const Effective& eff, Output& o) {
  FactorIfs f1 = problem.factor(1);
  FactorIfs f2 = problem.factor(2);
  auto cb = common_base(f1, f2);
  const Base& grid = cb ? cb->first : f1.base;
  auto s1 = f1.digits.similitudes(f1.base);
  auto s2 = f2.digits.similitudes(f2.base);
  PointCloud c1 = sample_attractor(s1, f1.base, eff.depth, eff.cap);
  PointCloud c2 = sample_attractor(s2, f2.base, eff.depth, eff.cap);
  PointCloud sum = sumset_cloud(c1, c2, eff.cap);
  // Scales follow the grid base; the cloud resolution check guards against too fine a range.
  auto [jmin, jmax] = default_box_scales(eff.depth);
  BoxCountEstimate est = box_count_dimension(sum, grid, jmin, jmax);

  o.human << "box-counting estimate: " << format_g12(est.slope) << " +- " << format_g12(est.std_error)
          << " (not a certificate)\n"
          << "points: " << sum.points.size() << ", depth " << eff.depth << ", scales base^-" << jmin << " .. base^-"
          << jmax << "\n"
          << "eps N(eps)\n";
  for (auto [eps, n] : est.series) {
    o.human << format_g12(eps) << " " << n << "\n";
    o.series.push_back(format_g12(eps) + ", " + std::to_string(n));
  }
  o.kv["estimate"] = format_g12(est.slope);
  o.kv["std_error"] = format_g12(est.std_error);
  o.kv["depth"] = std::to_string(eff.depth);
  o.kv["points"] = std::to_string(sum.points.size());
  o.kv["j_min"] = std::to_string(jmin);
  o.kv["j_max"] = std::to_string(jmax);
  o.kv["certified"] = "no";
  return 0;
}

}  // namespace

std::string format_down(double x) { return format_directed(x, false); }
std::string format_up(double x) { return format_directed(x, true); }

CommandResult run_command(std::string_view command, const ProblemSpec& problem, const RunFlags& flags) {
  CommandResult res;
  Output o;
  try {
    Effective eff = effective(problem, flags);
    if (command == "classify") res.exit_code = cmd_classify(problem, eff, o);
    else if (command == "matchings") res.exit_code = cmd_matchings(problem, eff, o);
    else if (command == "dim") res.exit_code = cmd_dim(problem, eff, o);
    else if (command == "osc") res.exit_code = cmd_osc(problem, eff, o);
    else if (command == "boxcount") res.exit_code = cmd_boxcount(problem, eff, o);
    else throw InputError("unknown command '" + std::string(command) + "'");
    res.out = o.render(flags.machine);
    if (res.exit_code == 2) res.err = "resource cap reached; result is truncated\n";
  } catch (const CapExceeded& e) {
    res.exit_code = 2;
    res.err = std::string("resource cap: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.err = std::string("error: ") + e.what() + "\n";
  }
  return res;
}

CommandResult run_command_text(std::string_view command, std::string_view text, const RunFlags& flags) {
  try {
    ProblemSpec problem = parse_problem(text);
    return run_command(command, problem, flags);
  } catch (const std::exception& e) {
    return CommandResult{1, "", std::string("error: ") + e.what() + "\n"};
  }
}

DimensionResult parse_dimension_result(std::string_view machine_text) {
  DimensionResult r;
  std::istringstream in{std::string(machine_text)};
  std::string line;
  std::map<std::string, std::string> notes;
  auto number = [](const std::string& v) { return std::strtod(v.c_str(), nullptr); };
  while (std::getline(in, line)) {
    auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 3);
    if (key == "tag") {
      if (value == "Exact") r.tag = DimensionTag::Exact;
      else if (value == "Interval") r.tag = DimensionTag::Interval;
      else if (value == "UpperBoundOnly") r.tag = DimensionTag::UpperBoundOnly;
      else if (value == "PeresShmerkin") r.tag = DimensionTag::PeresShmerkin;
      else throw InputError("unknown tag '" + value + "'");
    } else if (key == "value") r.value = number(value);
    else if (key == "lo") r.lo = number(value);
    else if (key == "hi") r.hi = number(value);
    else if (key == "structure") r.structure = value;
    else if (key == "osc_method") r.certificates.osc_method = value;
    else if (key == "lmax") r.certificates.lmax = std::stoul(value);
    else if (key == "tail_bound") r.certificates.tail_bound = number(value);
    else if (key == "summary") r.certificates.summary = value;
    else if (key == "cap_hit") r.cap_hit = value == "yes";
    else if (key.rfind("note.", 0) == 0) notes[key] = value;
  }
  for (auto& [k, v] : notes) r.certificates.notes.push_back(v);
  return r;
}

}  // namespace sumsetdim
