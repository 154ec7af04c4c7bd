#include "splitfix/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "splitfix/error.hpp"

namespace splitfix {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string coords(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i) out += (i ? "," : "") + g17(v[i]);
  return out;
}

PropertyReport make_report(std::string name, double slack) {
  PropertyReport r;
  r.property_name = std::move(name);
  r.slack = slack;
  return r;
}

void require_fixed(const FixedPointMap& f, const Vector& v) {
  const double r = f.residual(v);
  if (r > kFixedPointTol)
    throw Error("point " + to_string(v) + " is not a fixed point of '" + f.name() + "' (residual " + g17(r) + ")");
}

}  // namespace

void PropertyReport::record(double violation, const Vector& u, const Vector& v) {
  ++samples_checked;
  if (samples_checked == 1 || violation > worst_violation) {
    worst_violation = violation;
    if (violation > slack) witness = std::make_pair(u, v);
  }
  passed = worst_violation <= slack;
}

std::string format_report(const PropertyReport& r) {
  std::string line = "property=" + r.property_name + " verdict=" + (r.passed ? "PASS" : "FAIL") +
                     " kind=" + (r.passed ? "evidence" : "proof") + " worst_violation=" + g17(r.worst_violation) +
                     " slack=" + g17(r.slack) + " samples=" + std::to_string(r.samples_checked);
  if (r.witness) line += " witness_u=" + coords(r.witness->first) + " witness_v=" + coords(r.witness->second);
  return line;
}

double estimate_demicontractive_constant(const FixedPointMap& f, const Vector& v, const std::vector<Vector>& samples) {
  require_fixed(f, v);
  bool any = false;
  double best = 0.0;
  for (const auto& u : samples) {
    const Vector fu = f.evaluate(u);
    const double move_sq = distance_sq(u, fu);
    if (std::sqrt(move_sq) <= 1e-12) continue;
    any = true;
    best = std::max(best, (distance_sq(fu, v) - distance_sq(u, v)) / move_sq);
  }
  if (!any) throw Error("no usable samples: every sample is fixed by '" + f.name() + "'");
  return best;
}

PropertyReport check_quasi_nonexpansive(const FixedPointMap& f, const std::vector<Vector>& fixed_points,
                                        const std::vector<Vector>& samples, double slack) {
  if (fixed_points.empty() || samples.empty()) throw Error("check_quasi_nonexpansive needs fixed points and samples");
  for (const auto& v : fixed_points) require_fixed(f, v);
  auto report = make_report("quasi_nonexpansive[" + f.name() + "]", slack);
  for (const auto& u : samples) {
    const Vector fu = f.evaluate(u);
    for (const auto& v : fixed_points) report.record(distance(fu, v) - distance(u, v), u, v);
  }
  report.worst_violation = std::max(0.0, report.worst_violation);
  return report;
}

std::vector<PropertyReport> check_quasi_nonexpansive_inequalities(const FixedPointMap& s, double t, const Vector& u,
                                                                  const Vector& v, double slack) {
  if (!(t > 0.0 && t <= 1.0)) throw ParameterError("relaxation t must lie in (0, 1], got " + g17(t));
  require_fixed(s, v);
  const Vector su = s.evaluate(u);
  const Vector st_u = lerp(u, su, t);
  const Vector step = u - su;
  const double step_sq = norm_sq(step);

  auto one = [&](const char* name, double violation) {
    auto r = make_report(std::string(name) + "[" + s.name() + "]", slack);
    r.record(violation, u, v);
    return r;
  };
  return {
      one("qne_inner_product_bound", 0.5 * step_sq - inner(step, u - v)),
      one("qne_relaxed_distance_decrease", distance_sq(st_u, v) - distance_sq(u, v) + t * (1.0 - t) * step_sq),
      one("qne_relaxed_inner_product_bound", 0.5 * t * step_sq - inner(u - st_u, u - v)),
  };
}

PropertyReport fejer_monitor(const IterationTrace& trace, const Vector& v, double slack) {
  auto report = make_report("fejer_monotone[" + trace.info.algorithm + "]", slack);
  const auto its = trace.iterates();
  for (std::size_t k = 1; k < its.size(); ++k) {
    const double increment = distance(its[k], v) - distance(its[k - 1], v);
    report.record(std::max(0.0, increment), its[k], its[k - 1]);
  }
  return report;
}

PropertyReport check_weak_descent(const IterationTrace& trace, const Vector& v, double slack) {
  auto report = make_report("weak_descent_bound[" + trace.info.algorithm + "]", slack);
  const auto& in = trace.info;
  const double gm = in.gamma * in.mu;
  const double g_coeff = gm * (1.0 - in.spectral_bound * gm);
  const double f_coeff = in.delta * in.delta;
  for (const auto& r : trace.records) {
    const double rhs = distance_sq(r.u, v) - g_coeff * r.residual_G * r.residual_G - f_coeff * r.residual_F * r.residual_F;
    report.record(distance_sq(r.u_next, v) - rhs, r.u, v);
  }
  return report;
}

PropertyReport check_strong_chain(const IterationTrace& trace, const Vector& v, double slack) {
  auto report = make_report("strong_distance_chain[" + trace.info.algorithm + "]", slack);
  for (const auto& r : trace.records) {
    if (!r.z) throw Error("strong chain check needs z_p in the trace");
    const double dy = distance(r.y, v);
    const double dz = distance(*r.z, v);
    const double du = distance(r.u, v);
    report.record(std::max(dy - dz, dz - du), r.u, v);
  }
  return report;
}

PropertyReport check_anchor_distance_monotone(const IterationTrace& trace, double slack) {
  auto report = make_report("anchor_distance_nondecreasing[" + trace.info.algorithm + "]", slack);
  const auto its = trace.iterates();
  for (std::size_t k = 1; k < its.size(); ++k) {
    const double drop = distance(its[k - 1], trace.info.u0) - distance(its[k], trace.info.u0);
    report.record(std::max(0.0, drop), its[k], its[k - 1]);
  }
  return report;
}

}  // namespace splitfix
