#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splitfix/fixed_point_map.hpp"
#include "splitfix/trace.hpp"

namespace splitfix {

/// Outcome of one sampled property check. Checks are one-sided: a pass is
/// evidence, a failure with a witness is a proof.
struct PropertyReport {
  std::string property_name;
  bool passed = true;
  double worst_violation = 0.0;
  double slack = 0.0;
  std::optional<std::pair<Vector, Vector>> witness;
  int samples_checked = 0;

  /// Folds in one sample's violation, keeping the worst and its witness.
  void record(double violation, const Vector& u, const Vector& v);
};

/// Line-oriented rendering:
///   property=<name> verdict=PASS|FAIL kind=evidence|proof worst_violation=<%.17g>
///   slack=<%.17g> samples=<n>[ witness_u=<c,...> witness_v=<c,...>]
std::string format_report(const PropertyReport& report);

/// Largest beta any valid demicontractivity constant must exceed:
///   max_u (||F(u) - v||^2 - ||u - v||^2) / ||u - F(u)||^2, floored at 0,
/// over samples with ||u - F(u)|| > 1e-12. Requires ||F(v) - v|| <= 1e-10.
/// Throws Error when no sample is usable.
double estimate_demicontractive_constant(const FixedPointMap& f, const Vector& v, const std::vector<Vector>& samples);

/// ||F(u) - v|| <= ||u - v|| + slack over all sample/fixed-point pairs.
PropertyReport check_quasi_nonexpansive(const FixedPointMap& f, const std::vector<Vector>& fixed_points,
                                        const std::vector<Vector>& samples, double slack);

/// For quasi-nonexpansive S, S_t = (1 - t) I + t S, t in (0, 1], v in Fix(S):
///   [0] <u - Su, u - v> >= ||u - Su||^2 / 2 - slack
///   [1] ||S_t u - v||^2 <= ||u - v||^2 - t (1 - t) ||u - Su||^2 + slack
///   [2] <u - S_t u, u - v> >= (t/2) ||u - Su||^2 - slack
std::vector<PropertyReport> check_quasi_nonexpansive_inequalities(const FixedPointMap& s, double t, const Vector& u,
                                                                  const Vector& v, double slack);

/// ||u_{p+1} - v|| <= ||u_p - v|| + slack along the trace's iterates.
PropertyReport fejer_monitor(const IterationTrace& trace, const Vector& v, double slack);

/// Per-step descent bound of the weak solvers:
///   ||u_{p+1} - v||^2 <= ||u_p - v||^2 - gamma mu (1 - lambda gamma mu) r_G^2 - delta^2 r_F^2
/// with r_G, r_F the traced residuals and lambda the trace's spectral bound.
PropertyReport check_weak_descent(const IterationTrace& trace, const Vector& v, double slack);

/// ||y_p - v|| <= ||z_p - v|| <= ||u_p - v|| along a strong-solver trace.
PropertyReport check_strong_chain(const IterationTrace& trace, const Vector& v, double slack);

/// ||u_p - u_0|| nondecreasing along a strong-solver trace.
PropertyReport check_anchor_distance_monotone(const IterationTrace& trace, double slack);

}  // namespace splitfix
