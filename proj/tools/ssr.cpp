// Command-line driver for the super-stable roommates solver.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ssr/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"super-stable roommates solver (exact rational LP)"};
  app.require_subcommand(1);

  std::string inst_path, matching_path, out_path;
  ssr::SolveFlags flags;
  int n = 0, max_n = 4, count = 10;
  std::uint64_t seed = 0;
  std::string ties = "0";

  CLI::App* solve = app.add_subcommand(
      "solve", "decide existence and construct a super-stable matching");
  solve->add_option("file", inst_path, "instance file")->required();
  solve->add_flag("--point", flags.point, "dump the final LP point");
  solve->add_flag("--certificate", flags.certificate,
                  "dump the extraction structures");
  solve->add_flag("--cuts", flags.cuts, "dump the generated cut rows");
  solve->add_flag("--stats", flags.stats, "print run statistics to stderr");

  CLI::App* check =
      app.add_subcommand("check", "verify a matching against an instance");
  check->add_option("instance", inst_path, "instance file")->required();
  check->add_option("matching", matching_path, "matching file, 'u v' per line")
      ->required();

  CLI::App* gen = app.add_subcommand("gen", "emit a random instance");
  gen->add_option("-n", n, "number of vertices (even)")->required();
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--ties", ties, "tie bias, a rational p/q in [0,1]");
  gen->add_option("-o,--out", out_path, "write to a file instead of stdout");

  CLI::App* compare = app.add_subcommand(
      "compare", "cross-validate the solver against brute force");
  compare->add_option("--max-n", max_n, "largest instance size (even, <= 10)");
  compare->add_option("--count", count, "instances per size/bias cell");
  compare->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems exit 1
  }

  if (solve->parsed())
    return ssr::run_solve(inst_path, flags, std::cout, std::cerr);
  if (check->parsed())
    return ssr::run_check(inst_path, matching_path, std::cout, std::cerr);
  if (gen->parsed())
    return ssr::run_gen(n, seed, ties, out_path, std::cout, std::cerr);
  if (compare->parsed())
    return ssr::run_compare(max_n, count, seed, std::cout, std::cerr);
  return 1;
}
