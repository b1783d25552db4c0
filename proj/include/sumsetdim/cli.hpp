#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sumsetdim/core.hpp"
#include "sumsetdim/dimension.hpp"

namespace sumsetdim {

/// One `[ifs1]` or `[ifs2]` section. Entries keep file order; a section may override the base.
struct FactorSpec {
  std::optional<Rational> base;
  std::vector<std::variant<Similitude, Block>> entries;
};

struct ProblemOptions {
  std::optional<std::size_t> lmax;
  std::optional<double> tol;
  std::optional<std::size_t> cap;
  std::optional<std::size_t> depth;
};

struct ProblemSpec {
  std::optional<Rational> base;
  FactorSpec ifs1;
  FactorSpec ifs2;
  ProblemOptions options;

  /// Section `which` (1 or 2) as a factor over its effective base.
  FactorIfs factor(int which) const;
};

/// Parses the line-oriented problem format:
///
///   # comment
///   base = 3
///   lmax = 40            (also tol, cap, depth)
///   [ifs1]
///   map = 1, 0           exponent n, translation a: x -> base^-n x + a
///   map = 2, 8/9
///   [ifs2]
///   base = 9             optional per-section base
///   block = 0 2          digit string, whitespace separated rationals
///
/// Throws InputError naming the line and field.
ProblemSpec parse_problem(std::string_view text);

struct RunFlags {
  std::optional<std::size_t> lmax;
  std::optional<double> tol;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> cap;
  bool machine = false;
};

struct CommandResult {
  int exit_code = 0;  // 0 ok, 2 resource cap, 1 input error
  std::string out;
  std::string err;
};

/// Runs classify, matchings, dim, osc or boxcount. Never throws.
CommandResult run_command(std::string_view command, const ProblemSpec& problem, const RunFlags& flags);

/// Parses the file text first; input errors become exit code 1.
CommandResult run_command_text(std::string_view command, std::string_view text, const RunFlags& flags);

/// Inverse of the machine-readable `dim` report.
DimensionResult parse_dimension_result(std::string_view machine_text);

/// 12 significant digits, rounded toward -inf or +inf, so a printed bound stays a bound.
std::string format_down(double x);
std::string format_up(double x);
std::string format_g12(double x);

}  // namespace sumsetdim
