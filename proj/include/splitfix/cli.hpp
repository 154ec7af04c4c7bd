#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "splitfix/config.hpp"
#include "splitfix/trace.hpp"

namespace splitfix {

inline constexpr int kExitConverged = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitMaxIters = 2;

struct CliOptions {
  std::optional<std::uint64_t> seed;
  RunOverrides overrides;  // for compare, `out` names a directory
};

/// Runs the configured algorithm on the configured problem.
IterationTrace run_configured(const ProblemSpec& problem, const RunSpec& run);

/// Unaveraged residuals at u: ||F_i(u) - u|| for each F map and
/// ||G_j(Au) - Au|| for each G map.
struct FinalResiduals {
  std::vector<double> F, G;
};
FinalResiduals final_residuals(const ProblemSpec& problem, const Vector& u);

/// iter,residual_F,residual_G,dist_to_ref,dist_u0,fejer_ok with %.17g reals
/// and empty fields for undefined values.
void write_trace_csv(const IterationTrace& trace, std::ostream& out);

int cmd_solve(const std::string& problem_file, const std::string& run_file, const CliOptions& options,
              std::ostream& out, std::ostream& err);

/// Runs each file concurrently on the same problem and prints a table in
/// argument order. A failing run prints an error line and does not stop the
/// others.
int cmd_compare(const std::string& problem_file, const std::vector<std::string>& run_files, const CliOptions& options,
                std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& scope, std::ostream& out, std::ostream& err);

std::string verify_usage();

}  // namespace splitfix
