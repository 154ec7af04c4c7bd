#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splitfix/vector.hpp"

namespace splitfix {

/// One step p of a solver: the iterate u_p, the intermediate points, the
/// next iterate and the quantities the convergence analysis drives to zero.
struct IterationRecord {
  int p = 0;
  Vector u;
  Vector y;
  std::optional<Vector> z;  // strong solvers only
  Vector u_next;
  double residual_F = 0.0;  // ||F_a(y_p) - y_p||, or at z_p for the strong solvers
  double residual_G = 0.0;  // ||G_b(A u_p) - A u_p||
  std::optional<double> dist_to_ref;  // ||u_p - v||
  std::optional<bool> fejer_ok;       // ||u_{p+1} - v|| <= ||u_p - v|| + 1e-12
  std::optional<double> dist_u0;      // ||u_p - u_0||, strong solvers only
  std::optional<double> alpha;        // relaxation actually applied to F (weak) or induced alpha_p (strong)
  int projection_sweeps = 0;
};

enum class StopReason { converged, max_iters };

/// Parameters in force during a run, kept with the trace so that post-hoc
/// checks can evaluate the descent bounds.
struct TraceInfo {
  std::string algorithm;
  Vector u0;
  std::optional<Vector> reference;
  double gamma = 0.0;          // weak solvers
  double mu = 0.0;             // weak solvers
  double spectral_bound = 0.0; // safety-inflated spectral radius of A*A
  double delta = 0.0;          // weak solvers
  double lambda_step = 0.0;    // strong solvers
  double a = 1.0;
  double b = 1.0;
};

inline constexpr double kMonotoneSlack = 1e-12;

struct IterationTrace {
  std::vector<IterationRecord> records;
  StopReason stop = StopReason::max_iters;
  Vector solution;
  TraceInfo info;

  bool converged() const noexcept { return stop == StopReason::converged; }
  int iterations() const noexcept { return static_cast<int>(records.size()); }

  /// u_first, ..., u_last, solution.
  std::vector<Vector> iterates() const;
};

}  // namespace splitfix
