#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sumsetdim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Classify K1 + K2 for two self-similar sets with a common base and compute its dimension"};
  std::string command;
  std::string path;
  sumsetdim::RunFlags flags;
  std::size_t lmax = 0;
  double tol = 0;
  std::size_t depth = 0;

  app.add_option("command", command, "classify | matchings | dim | osc | boxcount")
      ->required()
      ->check(CLI::IsMember({"classify", "matchings", "dim", "osc", "boxcount"}));
  app.add_option("file", path, "problem file")->required();
  auto* lmax_opt = app.add_option("--lmax", lmax, "Matching length cutoff")->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tol, "target interval width")->check(CLI::PositiveNumber);
  auto* depth_opt = app.add_option("--depth", depth, "coding depth for point clouds")->check(CLI::PositiveNumber);
  app.add_flag("--machine", flags.machine, "flat key = value output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (*lmax_opt) flags.lmax = lmax;
  if (*tol_opt) flags.tol = tol;
  if (*depth_opt) flags.depth = depth;
  if (const char* cap = std::getenv("SUMSETDIM_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(cap, &end, 10);
    if (end == cap || *end != '\0' || v == 0) {
      std::cerr << "error: SUMSETDIM_CAP must be a positive integer\n";
      return 1;
    }
    flags.cap = static_cast<std::size_t>(v);
  }

  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();

  sumsetdim::CommandResult r = sumsetdim::run_command_text(command, text.str(), flags);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
