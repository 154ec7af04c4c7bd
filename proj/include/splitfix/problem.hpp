#pragma once

#include <optional>
#include <utility>

#include "splitfix/convex_set.hpp"
#include "splitfix/fixed_point_map.hpp"
#include "splitfix/linear_operator.hpp"

namespace splitfix {

inline constexpr double kReferenceTol = 1e-8;

/// Find u in Fix(F) with A u in Fix(G). F acts on R^n, G on R^m and A maps
/// R^n to R^m; D is the projection domain used by the strong solvers.
class SplitProblem {
public:
  /// Checks dimension coherence and, when given, that the reference solution
  /// solves the problem within 1e-8.
  SplitProblem(FixedPointMap f, FixedPointMap g, LinearOperator a, ConvexSet d,
               std::optional<Vector> reference_solution = std::nullopt);

  const FixedPointMap& F() const noexcept { return f_; }
  const FixedPointMap& G() const noexcept { return g_; }
  const LinearOperator& A() const noexcept { return a_; }
  const ConvexSet& D() const noexcept { return d_; }
  const std::optional<Vector>& reference_solution() const noexcept { return reference_; }

  std::size_t dim() const noexcept { return a_.dim_in(); }
  std::size_t range_dim() const noexcept { return a_.dim_out(); }

private:
  FixedPointMap f_;
  FixedPointMap g_;
  LinearOperator a_;
  ConvexSet d_;
  std::optional<Vector> reference_;
};

struct Residuals {
  double F = 0.0;  // ||F(u) - u||
  double G = 0.0;  // ||G(Au) - Au||
};

Residuals residuals(const SplitProblem& problem, const Vector& u);

}  // namespace splitfix
