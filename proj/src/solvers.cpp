#include "splitfix/solvers.hpp"

#include <cmath>
#include <sstream>

#include "splitfix/error.hpp"

namespace splitfix {

std::vector<Vector> IterationTrace::iterates() const {
  std::vector<Vector> out;
  out.reserve(records.size() + 1);
  for (const auto& r : records) out.push_back(r.u);
  if (!records.empty()) out.push_back(records.back().u_next);
  return out;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_open_interval(const char* name, double value, double lo, double hi, const std::string& bound_text) {
  if (!(value > lo && value < hi))
    throw ParameterError(std::string(name) + " = " + fmt(value) + " outside " + bound_text + " = (" + fmt(lo) +
                         ", " + fmt(hi) + ")");
}

double declared_beta_or_throw(const FixedPointMap& m, const char* which) {
  if (!m.declared_beta())
    throw ParameterError(std::string(which) + " map '" + m.name() + "' has no declared demicontractivity constant");
  return *m.declared_beta();
}

void guard(const Vector& v, int p, const char* quantity) {
  if (!v.all_finite())
    throw DivergenceError("non-finite " + std::string(quantity) + " at iteration " + std::to_string(p) + ": " +
                          to_string(v) + " (misdeclared operator class or step size?)");
}

// Shared body of the two weak solvers. a == b == 1 gives the baseline.
IterationTrace run_weak(const SplitProblem& prob, const WeakParams& params, const Vector& u1, double a, double b,
                        TraceInfo info) {
  require_same_dim("initial point", prob.dim(), u1.dim());
  check_open_interval("mu", params.mu, 0.0, 1.0, "(0, 1)");
  check_open_interval("delta", params.delta, 0.0, 0.5, "(0, 1/2)");
  const double spectral = kSpectralSafetyFactor * adjoint_norm_sq(prob.A());
  const double gamma_hi = spectral > 0.0 ? 1.0 / (spectral * params.mu) : INFINITY;
  check_open_interval("gamma", params.gamma, 0.0, gamma_hi, "(0, 1/(lambda*mu))");
  if (!(params.tol > 0.0)) throw ParameterError("tol must be > 0");
  if (params.max_iters < 1) throw ParameterError("max_iters must be >= 1");
  if (!params.alpha_schedule) throw ParameterError("alpha schedule is empty");

  info.u0 = u1;
  info.reference = prob.reference_solution();
  info.gamma = params.gamma;
  info.mu = params.mu;
  info.spectral_bound = spectral;
  info.delta = params.delta;
  info.a = a;
  info.b = b;

  IterationTrace trace;
  trace.info = std::move(info);
  const auto& ref = prob.reference_solution();
  const double step = params.gamma * params.mu;

  Vector u = u1;
  for (int p = 1; p <= params.max_iters; ++p) {
    const double t = params.alpha_schedule(p);
    check_open_interval("alpha_p", t, params.delta, 1.0 - params.delta, "(delta, 1 - delta)");

    IterationRecord rec;
    rec.p = p;
    rec.u = u;

    const Vector au = prob.A().apply(u);
    const Vector g_move = b * (prob.G().evaluate(au) - au);  // (G_b - I) A u
    rec.residual_G = norm(g_move);

    Vector y = u + step * prob.A().adjoint_apply(g_move);
    guard(y, p, "y_p");

    const Vector fy = prob.F().evaluate(y);
    Vector next;
    if (params.form == UpdateForm::averaged) {
      const Vector fa_y = lerp(y, fy, a);
      rec.residual_F = distance(fa_y, y);
      next = lerp(y, fa_y, t);
    } else {
      rec.residual_F = a * distance(fy, y);
      next = lerp(y, fy, a * t);
    }
    guard(next, p, "u_{p+1}");
    rec.alpha = a * t;

    if (ref) {
      const double d_now = distance(u, *ref);
      rec.dist_to_ref = d_now;
      rec.fejer_ok = distance(next, *ref) <= d_now + kMonotoneSlack;
    }
    rec.y = std::move(y);
    rec.u_next = next;
    const bool done = std::max(rec.residual_F, rec.residual_G) <= params.tol;
    trace.records.push_back(std::move(rec));
    u = std::move(next);
    if (done) {
      trace.stop = StopReason::converged;
      break;
    }
  }
  trace.solution = u;
  return trace;
}

// Hybrid projection body. `fa` and `gb` are the already-averaged maps, so
// b (G - I) = gb - I.
IterationTrace run_hybrid(const FixedPointMap& fa, const FixedPointMap& gb, const LinearOperator& A,
                          const ConvexSet& D, const StrongParams& params, const Vector& u0,
                          const std::optional<Vector>& ref, TraceInfo info) {
  require_same_dim("initial point", A.dim_in(), u0.dim());
  require_same_dim("domain D", A.dim_in(), D.dim());
  check_open_interval("eta", params.eta, 0.0, 1.0, "(0, 1)");
  const double norm_sq_bound = kSpectralSafetyFactor * adjoint_norm_sq(A);
  const double lambda_hi = norm_sq_bound > 0.0 ? 1.0 / norm_sq_bound : INFINITY;
  check_open_interval("lambda", params.lambda_step, 0.0, lambda_hi, "(0, 1/||A*||^2)");
  if (!(params.tol > 0.0)) throw ParameterError("tol must be > 0");
  if (params.max_iters < 1) throw ParameterError("max_iters must be >= 1");
  if (!params.t_schedule) throw ParameterError("t schedule is empty");
  if (!D.contains(u0, kDomainTol)) throw DomainError("initial point " + to_string(u0) + " must lie in D");

  info.u0 = u0;
  info.reference = ref;
  info.spectral_bound = norm_sq_bound;
  info.lambda_step = params.lambda_step;

  IterationTrace trace;
  trace.info = std::move(info);

  CutList cuts(D, params.cut_cap);
  DykstraWarmStart warm;
  const double a = trace.info.a;

  Vector u = u0;
  for (int p = 0; p < params.max_iters; ++p) {
    const double t = params.t_schedule(p);
    check_open_interval("t_p", t, 0.0, params.eta, "(0, eta)");

    IterationRecord rec;
    rec.p = p;
    rec.u = u;
    rec.dist_u0 = distance(u, u0);

    const Vector au = A.apply(u);
    const Vector g_move = gb.evaluate(au) - au;
    rec.residual_G = norm(g_move);

    Vector z = D.project(u + params.lambda_step * A.adjoint_apply(g_move));
    guard(z, p, "z_p");
    const Vector fz = fa.evaluate(z);
    rec.residual_F = distance(fz, z);
    Vector y = lerp(fz, z, t);
    guard(y, p, "y_p");
    rec.alpha = 1.0 - a * (1.0 - t);

    cuts.append(fejer_cut(y, z));
    cuts.append(fejer_cut(z, u));

    DykstraStats stats;
    Vector next;
    try {
      next = project_onto_intersection(cuts, u0, params.dykstra_tol, params.dykstra_max_sweeps, &warm, &stats);
    } catch (const DykstraError& e) {
      throw DykstraError(e.last_iterate(), e.worst_violation(), params.dykstra_max_sweeps,
                         "iteration " + std::to_string(p) + " with " + std::to_string(cuts.size()) + " cuts");
    }
    guard(next, p, "u_{p+1}");
    rec.projection_sweeps = stats.sweeps;

    if (ref) {
      const double d_now = distance(u, *ref);
      rec.dist_to_ref = d_now;
      rec.fejer_ok = distance(next, *ref) <= d_now + kMonotoneSlack;
    }
    const double move = distance(next, u);
    rec.z = std::move(z);
    rec.y = std::move(y);
    rec.u_next = next;
    const bool done = move <= params.tol && std::max(rec.residual_F, rec.residual_G) <= params.tol;
    trace.records.push_back(std::move(rec));
    u = std::move(next);
    if (done) {
      trace.stop = StopReason::converged;
      break;
    }
  }
  trace.solution = u;
  return trace;
}

}  // namespace

double weak_step_gamma(const LinearOperator& a, double mu, double fraction) {
  const double spectral = kSpectralSafetyFactor * adjoint_norm_sq(a);
  if (spectral == 0.0) return fraction;
  return fraction / (spectral * mu);
}

double strong_step_lambda(const LinearOperator& a, double fraction) {
  const double bound = kSpectralSafetyFactor * adjoint_norm_sq(a);
  if (bound == 0.0) return fraction;
  return fraction / bound;
}

IterationTrace moudafi_solve(const SplitProblem& problem, const WeakParams& params, const Vector& u1) {
  if (!problem.F().declared_quasi_nonexpansive() || !problem.G().declared_quasi_nonexpansive())
    throw ParameterError("moudafi_solve requires F and G declared quasi-nonexpansive (beta = 0)");
  WeakParams raw = params;
  raw.form = UpdateForm::averaged;
  TraceInfo info;
  info.algorithm = "moudafi";
  return run_weak(problem, raw, u1, 1.0, 1.0, std::move(info));
}

IterationTrace averaged_weak_solve(const SplitProblem& problem, const WeakParams& params, const Vector& u1) {
  const double beta_f = declared_beta_or_throw(problem.F(), "F");
  const double beta_g = declared_beta_or_throw(problem.G(), "G");
  check_open_interval("a", params.a, 0.0, 1.0 - beta_f, "(0, 1 - beta_F)");
  check_open_interval("b", params.b, 0.0, 1.0 - beta_g, "(0, 1 - beta_G)");
  TraceInfo info;
  info.algorithm = "averaged_weak";
  return run_weak(problem, params, u1, params.a, params.b, std::move(info));
}

IterationTrace hybrid_strong_solve(const SplitProblem& problem, const StrongParams& params, double beta_F,
                                   double beta_G, const Vector& u0) {
  if (!(beta_F >= 0.0 && beta_F < 1.0)) throw ParameterError("beta_F must lie in [0, 1)");
  if (!(beta_G >= 0.0 && beta_G < 1.0)) throw ParameterError("beta_G must lie in [0, 1)");
  check_open_interval("a", params.a, 0.0, 1.0 - beta_F, "(0, 1 - beta_F)");
  check_open_interval("b", params.b, 0.0, 1.0 - beta_G, "(0, 1 - beta_G)");
  const AveragedMap fa = krasnoselskij_average(problem.F(), params.a);
  const AveragedMap gb = krasnoselskij_average(problem.G(), params.b);
  TraceInfo info;
  info.algorithm = "hybrid_strong";
  info.a = params.a;
  info.b = params.b;
  return run_hybrid(fa.map, gb.map, problem.A(), problem.D(), params, u0, problem.reference_solution(),
                    std::move(info));
}

IterationTrace hybrid_strong_solve(const SplitProblem& problem, const StrongParams& params, const Vector& u0) {
  return hybrid_strong_solve(problem, params, declared_beta_or_throw(problem.F(), "F"),
                             declared_beta_or_throw(problem.G(), "G"), u0);
}

IterationTrace multi_operator_solve(const MultiOperatorSpec& spec, const LinearOperator& a, const ConvexSet& d,
                                    const StrongParams& params, const Vector& u0, std::optional<Vector> reference) {
  if (spec.Fs.empty() || spec.Gs.empty()) throw ParameterError("multi_operator_solve needs at least one F and one G");
  if (spec.weights_c.size() != spec.Fs.size() || spec.inner_thetas.size() != spec.Fs.size())
    throw ParameterError("multi_operator_solve: c and theta lists must match the number of F maps (" +
                         std::to_string(spec.Fs.size()) + ")");
  if (spec.weights_d.size() != spec.Gs.size() || spec.inner_phis.size() != spec.Gs.size())
    throw ParameterError("multi_operator_solve: d and phi lists must match the number of G maps (" +
                         std::to_string(spec.Gs.size()) + ")");
  auto hats = [](const std::vector<FixedPointMap>& maps, double weight, const char* side) {
    std::vector<FixedPointMap> out;
    for (const auto& m : maps) {
      const double beta = declared_beta_or_throw(m, side);
      check_open_interval(side[0] == 'F' ? "a" : "b", weight, 0.0, 1.0 - beta, "(0, 1 - beta)");
      out.push_back(krasnoselskij_average(m, weight).map);
    }
    return out;
  };
  const FixedPointMap t1 = convex_combination(hats(spec.Fs, params.a, "F"), spec.weights_c, spec.inner_thetas);
  const FixedPointMap t2 = convex_combination(hats(spec.Gs, params.b, "G"), spec.weights_d, spec.inner_phis);
  require_same_dim("T1 versus columns of A", a.dim_in(), t1.dim());
  require_same_dim("T2 versus rows of A", a.dim_out(), t2.dim());

  TraceInfo info;
  info.algorithm = "multi_operator";
  info.a = 1.0;
  info.b = 1.0;
  return run_hybrid(t1, t2, a, d, params, u0, reference, std::move(info));
}

IterationTrace common_fixed_point_solve(const FixedPointMap& f, const FixedPointMap& g, const ConvexSet& d,
                                        const StrongParams& params, const Vector& u0, std::optional<Vector> reference) {
  require_same_dim("common fixed point maps", f.dim(), g.dim());
  SplitProblem problem(f, g, LinearOperator::identity(f.dim()), d, std::move(reference));
  IterationTrace trace = hybrid_strong_solve(problem, params, u0);
  trace.info.algorithm = "common_fixed_point";
  return trace;
}

}  // namespace splitfix
