#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "splitfix/cut_list.hpp"
#include "splitfix/problem.hpp"
#include "splitfix/trace.hpp"

namespace splitfix {

using Schedule = std::function<double(int)>;

inline Schedule constant_schedule(double value) {
  return [value](int) { return value; };
}

/// How the F-step of the averaged weak solver is evaluated:
///   averaged:    (1 - t) y + t F_a(y)
///   substituted: (1 - a t) y + a t F(y)
/// The two are the same map written in different association.
enum class UpdateForm { averaged, substituted };

struct WeakParams {
  double gamma = 0.0;  // must lie in (0, 1/(lambda mu))
  double mu = 0.5;     // in (0, 1)
  double a = 0.5;      // averaging weight for F, in (0, 1 - beta_F); unused by moudafi_solve
  double b = 0.5;      // averaging weight for G, in (0, 1 - beta_G); unused by moudafi_solve
  Schedule alpha_schedule = constant_schedule(0.5);  // values in (delta, 1 - delta)
  double delta = 0.1;  // in (0, 1/2)
  double tol = 1e-8;
  int max_iters = 100000;
  UpdateForm form = UpdateForm::averaged;
};

struct StrongParams {
  double lambda_step = 0.0;  // must lie in (0, 1/||A*||^2)
  double a = 0.5;            // in (0, 1 - beta_F)
  double b = 0.5;            // in (0, 1 - beta_G)
  double eta = 0.9;          // in (0, 1)
  Schedule t_schedule = constant_schedule(0.45);  // values in (0, eta)
  double dykstra_tol = kDefaultDykstraTol;
  int dykstra_max_sweeps = kDefaultDykstraMaxSweeps;
  double tol = 1e-8;
  int max_iters = 100000;
  std::size_t cut_cap = 0;  // 0 keeps every cut
};

/// gamma = fraction / (lambda mu) with lambda the safety-inflated spectral
/// radius of A*A.
double weak_step_gamma(const LinearOperator& a, double mu, double fraction = 0.9);

/// lambda = fraction / ||A*||^2 (safety-inflated).
double strong_step_lambda(const LinearOperator& a, double fraction = 0.9);

/// Baseline split common fixed-point iteration for quasi-nonexpansive F, G:
///   y_p = u_p + gamma mu A*(G - I) A u_p
///   u_{p+1} = (1 - alpha_p) y_p + alpha_p F(y_p)
/// Stops when max(||F(y_p) - y_p||, ||G(Au_p) - Au_p||) <= tol.
IterationTrace moudafi_solve(const SplitProblem& problem, const WeakParams& params, const Vector& u1);

/// Averaged iteration for beta-demicontractive F, G:
///   y_p = u_p + gamma mu A*(b (G - I)) A u_p
///   u_{p+1} = (1 - t_p) y_p + t_p F_a(y_p)
/// where F_a = (1 - a) I + a F. The residuals are measured on F_a and G_b.
IterationTrace averaged_weak_solve(const SplitProblem& problem, const WeakParams& params, const Vector& u1);

/// Hybrid projection iteration with the nested regions D_p:
///   z_p = P_D(u_p + lambda A*(b (G - I)) A u_p)
///   y_p = t_p z_p + (1 - t_p) F_a(z_p)
///   D_{p+1} = D_p ∩ {||y_p - u|| <= ||z_p - u||} ∩ {||z_p - u|| <= ||u_p - u||}
///   u_{p+1} = P_{D_{p+1}}(u_0)
/// beta_F and beta_G may differ. Stops when ||u_{p+1} - u_p|| <= tol and
/// both residuals are <= tol.
IterationTrace hybrid_strong_solve(const SplitProblem& problem, const StrongParams& params, double beta_F,
                                   double beta_G, const Vector& u0);

/// hybrid_strong_solve with beta_F, beta_G read from the maps' declarations.
IterationTrace hybrid_strong_solve(const SplitProblem& problem, const StrongParams& params, const Vector& u0);

struct MultiOperatorSpec {
  std::vector<FixedPointMap> Fs;
  std::vector<FixedPointMap> Gs;
  std::vector<double> weights_c;     // sum to 1
  std::vector<double> weights_d;     // sum to 1
  std::vector<double> inner_thetas;  // in (0, 1)
  std::vector<double> inner_phis;    // in (0, 1)
};

/// Builds T1 = sum c_i ((1 - theta_i) I + theta_i F^_i) and
/// T2 = sum d_j ((1 - phi_j) I + phi_j G^_j) over the averaged maps
/// F^_i = (1 - a) I + a F_i and G^_j = (1 - b) I + b G_j, then runs the
/// hybrid iteration on (T1, T2) without further averaging.
IterationTrace multi_operator_solve(const MultiOperatorSpec& spec, const LinearOperator& a, const ConvexSet& d,
                                    const StrongParams& params, const Vector& u0,
                                    std::optional<Vector> reference = std::nullopt);

/// Common fixed point of F and G on one space: the hybrid iteration with A
/// the identity.
IterationTrace common_fixed_point_solve(const FixedPointMap& f, const FixedPointMap& g, const ConvexSet& d,
                                        const StrongParams& params, const Vector& u0,
                                        std::optional<Vector> reference = std::nullopt);

}  // namespace splitfix
