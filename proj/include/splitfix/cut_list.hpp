#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "splitfix/convex_set.hpp"
#include "splitfix/error.hpp"

namespace splitfix {

/// The nested feasible region D_p = base ∩ (cut_1 ∩ ... ∩ cut_k) built up by
/// the hybrid projection solvers. Cuts are only appended, so every region is
/// contained in the previous one. An optional cap drops the oldest cuts once
/// more than `cap` are held (0 means unbounded); dropping keeps every
/// solution feasible but gives up strict nestedness.
class CutList {
public:
  explicit CutList(ConvexSet base, std::size_t cap = 0);

  const ConvexSet& base() const noexcept { return base_; }
  std::size_t dim() const noexcept { return base_.dim(); }
  std::size_t size() const noexcept { return cuts_.size(); }
  std::size_t cap() const noexcept { return cap_; }
  /// Absolute index of cuts()[0]; grows when the cap drops old cuts.
  std::size_t first_index() const noexcept { return first_index_; }
  const std::deque<Halfspace>& cuts() const noexcept { return cuts_; }

  /// Appends a halfspace cut. A whole-space cut is ignored and reported by
  /// returning false.
  bool append(const ConvexSet& cut);
  bool append(Halfspace cut);

  /// Largest distance from u to the base or to any single cut.
  double max_violation(const Vector& u) const;
  bool contains(const Vector& u, double tol = 1e-10) const { return max_violation(u) <= tol; }

private:
  ConvexSet base_;
  std::size_t cap_;
  std::size_t first_index_ = 0;
  std::deque<Halfspace> cuts_;
};

/// Dual state carried between successive projections of the same anchor onto
/// a growing CutList. Reusing it is valid because each Dykstra step is an exact
/// block-coordinate maximization of the dual, which converges from any dual
/// feasible start.
struct DykstraWarmStart {
  std::size_t first_index = 0;
  std::vector<double> cut_multipliers;  // correction for cut i is multiplier_i * normal_i
  Vector base_correction;
  Vector anchor;
};

struct DykstraStats {
  int sweeps = 0;
  double final_move = 0.0;
  double max_violation = 0.0;
  bool refined = false;  // an active-set solve supplied the final point
};

/// Whether Dykstra may periodically guess the active constraints from its
/// multipliers and solve for the projection directly. Only used when the base
/// is the whole space, a box or a halfspace. A solve that meets the KKT
/// conditions within tolerance is returned as the projection.
enum class ActiveSetRefinement { enabled, disabled };

/// Dykstra did not settle; carries the last iterate and its worst violation.
class DykstraError : public Error {
public:
  DykstraError(Vector last_iterate, double worst_violation, int sweeps, const std::string& context = {});
  const Vector& last_iterate() const noexcept { return last_iterate_; }
  double worst_violation() const noexcept { return worst_violation_; }

private:
  Vector last_iterate_;
  double worst_violation_;
};

inline constexpr double kDefaultDykstraTol = 1e-13;
inline constexpr int kDefaultDykstraMaxSweeps = 1000000;

/// Metric projection of u0 onto base ∩ cuts by Dykstra's cyclic projections
/// with per-set correction terms. Stops once a full sweep moves the
/// correction terms by at most `tol` in total and the iterate violates no
/// constraint by more than 10 * tol.
///
/// Nearly parallel active cuts make plain Dykstra crawl; with refinement
/// enabled, every kRefineInterval sweeps the current multipliers seed a small
/// active-set solve.
Vector project_onto_intersection(const CutList& cuts, const Vector& u0, double tol = kDefaultDykstraTol,
                                 int max_sweeps = kDefaultDykstraMaxSweeps,
                                 DykstraWarmStart* warm = nullptr, DykstraStats* stats = nullptr,
                                 ActiveSetRefinement refine = ActiveSetRefinement::enabled);

inline constexpr int kRefineInterval = 16;

}  // namespace splitfix
