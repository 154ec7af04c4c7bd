#include "splitfix/problem.hpp"

#include "splitfix/error.hpp"

namespace splitfix {

SplitProblem::SplitProblem(FixedPointMap f, FixedPointMap g, LinearOperator a, ConvexSet d,
                           std::optional<Vector> reference_solution)
    : f_(std::move(f)), g_(std::move(g)), a_(std::move(a)), d_(std::move(d)), reference_(std::move(reference_solution)) {
  require_same_dim("F versus columns of A", a_.dim_in(), f_.dim());
  require_same_dim("G versus rows of A", a_.dim_out(), g_.dim());
  require_same_dim("domain D versus columns of A", a_.dim_in(), d_.dim());
  if (reference_) {
    require_same_dim("reference solution", a_.dim_in(), reference_->dim());
    const Residuals r = residuals(*this, *reference_);
    if (r.F > kReferenceTol || r.G > kReferenceTol)
      throw Error("reference solution " + to_string(*reference_) + " is not a split fixed point (residuals " +
                  std::to_string(r.F) + ", " + std::to_string(r.G) + ")");
  }
}

Residuals residuals(const SplitProblem& problem, const Vector& u) {
  const Vector au = problem.A().apply(u);
  return {problem.F().residual(u), problem.G().residual(au)};
}

}  // namespace splitfix
