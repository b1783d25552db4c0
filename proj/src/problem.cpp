#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "sumsetdim/cli.hpp"

namespace sumsetdim {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto a = s.find_first_not_of(ws);
  if (a == std::string_view::npos) return {};
  auto b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(std::size_t line, std::string_view field, const std::string& message) {
  std::string where = "line " + std::to_string(line);
  if (!field.empty()) where += ", " + std::string(field);
  throw InputError(where + ": " + message);
}

std::size_t parse_count(std::size_t line, std::string_view key, std::string_view v) {
  std::size_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || out == 0) fail(line, key, "expected a positive integer");
  return out;
}

double parse_positive_double(std::size_t line, std::string_view key, std::string_view v) {
  std::string s(v);
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(line, key, "expected a number");
  }
  if (used != s.size() || !(out > 0)) fail(line, key, "expected a positive number");
  return out;
}

Rational parse_at(std::size_t line, std::string_view key, std::string_view v) {
  try {
    return parse_rational(v);
  } catch (const InputError& e) {
    fail(line, key, e.what());
  }
}

Rational parse_base(std::size_t line, std::string_view v) {
  Rational b = parse_at(line, "base", v);
  if (b <= 1) fail(line, "base", "base must exceed 1");
  return b;
}

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
  ProblemSpec problem;
  FactorSpec* section = nullptr;
  std::set<std::string> seen_global;
  std::set<std::string> seen_section[2];
  bool seen_header[2] = {false, false};
  std::size_t line_no = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line == "[ifs1]" || line == "[ifs2]") {
        int idx = line == "[ifs1]" ? 0 : 1;
        if (seen_header[idx]) fail(line_no, "", "duplicate section " + std::string(line));
        seen_header[idx] = true;
        section = idx == 0 ? &problem.ifs1 : &problem.ifs2;
        continue;
      }
      fail(line_no, "", "unknown section " + std::string(line));
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "", "expected key = value");
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "", "missing key");
    if (value.empty()) fail(line_no, key, "missing value");

    if (section == nullptr) {
      if (!seen_global.insert(key).second) fail(line_no, key, "duplicate key");
      if (key == "base") problem.base = parse_base(line_no, value);
      else if (key == "lmax") problem.options.lmax = parse_count(line_no, key, value);
      else if (key == "tol") problem.options.tol = parse_positive_double(line_no, key, value);
      else if (key == "cap") problem.options.cap = parse_count(line_no, key, value);
      else if (key == "depth") problem.options.depth = parse_count(line_no, key, value);
      else fail(line_no, key, "unknown key");
      continue;
    }

    int idx = section == &problem.ifs1 ? 0 : 1;
    if (key == "base") {
      if (!seen_section[idx].insert(key).second) fail(line_no, key, "duplicate key");
      section->base = parse_base(line_no, value);
    } else if (key == "map") {
      auto comma = value.find(',');
      if (comma == std::string_view::npos) fail(line_no, key, "expected 'n, a'");
      std::string_view n_text = trim(value.substr(0, comma));
      std::string_view a_text = trim(value.substr(comma + 1));
      int n = 0;
      auto [p, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
      if (ec != std::errc() || p != n_text.data() + n_text.size()) fail(line_no, "exponent", "expected an integer");
      if (n < 1) fail(line_no, "exponent", "exponent must be at least 1");
      section->entries.emplace_back(Similitude(n, parse_at(line_no, "translation", a_text)));
    } else if (key == "block") {
      std::vector<Rational> digits;
      std::istringstream words{std::string(value)};
      std::string w;
      while (words >> w) digits.push_back(parse_at(line_no, "block", w));
      section->entries.emplace_back(Block(std::move(digits)));
    } else {
      fail(line_no, key, "unknown key");
    }
  }

  for (int idx = 0; idx < 2; ++idx) {
    const FactorSpec& f = idx == 0 ? problem.ifs1 : problem.ifs2;
    std::string name = idx == 0 ? "[ifs1]" : "[ifs2]";
    if (f.entries.empty()) throw InputError("section " + name + " has no maps");
    if (!f.base && !problem.base) throw InputError("missing base for " + name);
  }
  return problem;
}

FactorIfs ProblemSpec::factor(int which) const {
  const FactorSpec& f = which == 1 ? ifs1 : ifs2;
  Base b(f.base ? *f.base : *base);
  std::vector<Block> blocks;
  for (const auto& e : f.entries) {
    if (const auto* s = std::get_if<Similitude>(&e)) blocks.push_back(block_of_similitude(*s, b));
    else blocks.push_back(std::get<Block>(e));
  }
  return FactorIfs{b, DigitalSet(std::move(blocks), which == 1 ? Source::First : Source::Second)};
}

}  // namespace sumsetdim
