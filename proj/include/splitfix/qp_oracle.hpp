#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "splitfix/cut_list.hpp"

namespace splitfix {

struct QpOracleResult {
  /// Nearest feasible point; empty when the constraints admit no point.
  std::optional<Vector> point;
  std::size_t active_set_size = 0;
  std::size_t candidates_tried = 0;
};

inline constexpr std::size_t kQpOracleMaxDim = 6;
inline constexpr std::size_t kQpOracleMaxCuts = 20;

/// Exact nearest point of base ∩ cuts to u0 by active-set enumeration: for
/// every subset of at most dim constraints, solve the equality-constrained
/// least-squares problem and accept the first candidate that is feasible
/// with nonnegative multipliers. The KKT conditions are sufficient for this
/// strictly convex problem, so that candidate is the minimizer.
///
/// Independent of the Dykstra engine; intended as its test oracle. Only a
/// whole-space or box base is supported, with dim <= 6 and <= 20 cuts.
QpOracleResult qp_projection_oracle(const CutList& cuts, const Vector& u0);

/// A fixed-seed projection problem inside the oracle's limits: dimension
/// 2..6 (2..4 with a box base), 1..20 cuts, all of which contain a common
/// interior point, and an anchor u0 that is usually infeasible.
struct ProjectionInstance {
  CutList cuts;
  Vector u0;
};

ProjectionInstance random_projection_instance(std::uint64_t seed);

}  // namespace splitfix
