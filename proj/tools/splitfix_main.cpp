#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "splitfix/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Split common fixed-point solvers and property checks"};
  app.require_subcommand(1);

  splitfix::CliOptions options;
  std::string problem_file, run_file, scope = "lemmas";
  std::vector<std::string> run_files;

  auto add_run_flags = [&options](CLI::App* cmd, const char* out_help) {
    cmd->add_option("--tol", options.overrides.tol, "Stopping tolerance (replaces the run file's tol)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", options.overrides.max_iters, "Iteration budget (replaces max_iters)")
        ->check(CLI::Range(1, 2147483647));
    cmd->add_option("--seed", options.seed, "Seed for random A and random u0 (replaces the problem's seed)");
    cmd->add_option("--out", options.overrides.out, out_help);
  };

  auto* solve = app.add_subcommand("solve", "Run one algorithm and write its iteration trace as CSV");
  solve->add_option("problem", problem_file, "Problem config file")->required()->check(CLI::ExistingFile);
  solve->add_option("run", run_file, "Run config file")->required()->check(CLI::ExistingFile);
  add_run_flags(solve, "CSV trace path (replaces the run file's out)");

  auto* compare = app.add_subcommand("compare", "Run several algorithms on one problem and tabulate the results");
  compare->add_option("problem", problem_file, "Problem config file")->required()->check(CLI::ExistingFile);
  compare->add_option("runs", run_files, "Run config files")->required()->check(CLI::ExistingFile);
  add_run_flags(compare, "Directory for per-run CSV traces, named after the run files");

  auto* verify = app.add_subcommand("verify", "Check operator-class properties and print one line per property");
  verify->add_option("--scope", scope, "lemmas, map:<id> or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : splitfix::kExitError;
  }

  if (*solve) return splitfix::cmd_solve(problem_file, run_file, options, std::cout, std::cerr);
  if (*compare) return splitfix::cmd_compare(problem_file, run_files, options, std::cout, std::cerr);
  return splitfix::cmd_verify(scope, std::cout, std::cerr);
}
