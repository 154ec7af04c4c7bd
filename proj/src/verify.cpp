#include "splitfix/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "splitfix/gallery.hpp"
#include "splitfix/qp_oracle.hpp"
#include "splitfix/random.hpp"

namespace splitfix {

namespace {

constexpr double kSlack = 1e-10;

std::string tag(const std::string& id, double nu) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s,nu=%.6g", id.c_str(), nu);
  return buf;
}

PropertyReport empty_report(std::string name, double slack) {
  PropertyReport r;
  r.property_name = std::move(name);
  r.slack = slack;
  return r;
}

double max_constant(const FixedPointMap& f, const std::vector<Vector>& samples) {
  double best = 0.0;
  for (const auto& v : f.known_fixed_points()) best = std::max(best, estimate_demicontractive_constant(f, v, samples));
  return best;
}

// Fixed points of F stay fixed under F_nu, and points F moves by more than
// 1e-6 are moved by at least nu * 1e-6.
void fixed_point_preservation(const GalleryEntry& e, const std::vector<Vector>& samples, double nu,
                              std::vector<VerifyItem>& out) {
  const AveragedMap avg = krasnoselskij_average(e.map, nu);
  auto kept = empty_report("averaging_preserves_fixed_points[" + tag(e.id, nu) + "]", kSlack);
  for (const auto& v : e.map.known_fixed_points()) kept.record(avg.map.residual(v), v, v);
  out.push_back({kept, true, std::nullopt});

  auto moved = empty_report("averaging_keeps_nonfixed_points[" + tag(e.id, nu) + "]", 0.0);
  for (const auto& u : samples)
    if (e.map.residual(u) > 1e-6) moved.record(nu * 1e-6 - avg.map.residual(u), u, u);
  out.push_back({moved, true, std::nullopt});
}

void averaging_constants(const GalleryEntry& e, const std::vector<Vector>& samples, std::vector<VerifyItem>& out) {
  const double beta = *e.map.declared_beta();
  for (double nu : {0.1, 0.5, 0.9}) {
    const AveragedMap avg = krasnoselskij_average(e.map, nu);
    auto formula = empty_report("averaging_constant_formula[" + tag(e.id, nu) + "]", 0.0);
    formula.record(std::abs(*avg.perturbed_constant - (1.0 + beta / nu - 1.0 / nu)), Vector{nu}, Vector{beta});
    out.push_back({formula, true, *avg.perturbed_constant});

    const double estimate = max_constant(avg.map, samples);
    auto bound = empty_report("averaging_constant_bound[" + tag(e.id, nu) + "]", 1e-8);
    bound.record(estimate - std::max(0.0, *avg.perturbed_constant), Vector{nu}, Vector{estimate});
    out.push_back({bound, true, estimate});
  }
}

void quasi_nonexpansive_embedding(const GalleryEntry& e, const std::vector<Vector>& samples,
                                  std::vector<VerifyItem>& out) {
  const double beta = *e.map.declared_beta();
  for (double frac : {0.25, 0.5, 0.75}) {
    const double nu = frac * (1.0 - beta);
    const AveragedMap avg = krasnoselskij_average(e.map, nu);
    auto r = check_quasi_nonexpansive(avg.map, e.map.known_fixed_points(), samples, kSlack);
    r.property_name = "averaged_quasi_nonexpansive[" + tag(e.id, nu) + "]";
    out.push_back({r, true, std::nullopt});
  }
}

// Two halfspaces of R^2 with intersection {u1 + u2 <= 1, u1 - u2 <= 0}.
void convex_combination_suite(std::vector<VerifyItem>& out) {
  const Halfspace h1{Vector{1.0, 1.0}, 1.0};
  const Halfspace h2{Vector{1.0, -1.0}, 0.0};
  const FixedPointMap t = convex_combination(
      {projection_as_map(ConvexSet::halfspace(h1.normal, h1.offset)), projection_as_map(ConvexSet::halfspace(h2.normal, h2.offset))},
      {0.5, 0.5}, {0.5, 0.5});

  const auto samples = uniform_samples(ConvexSet::box(Vector{-3.0, -3.0}, Vector{3.0, 3.0}), kSamplesNd, kSampleSeed);
  std::vector<Vector> inside;
  auto fixes = empty_report("convex_combination_fixes_intersection[halfspace_pair]", kSlack);
  auto moves = empty_report("convex_combination_moves_outside[halfspace_pair]", 0.0);
  for (const auto& u : samples) {
    const double outside = std::max(h1.slack(u) / norm(h1.normal), h2.slack(u) / norm(h2.normal));
    if (outside <= 0.0) {
      fixes.record(t.residual(u), u, u);
      inside.push_back(u);
    } else if (outside > 1e-3) {
      moves.record(1e-6 - t.residual(u), u, u);
    }
  }
  out.push_back({fixes, true, std::nullopt});
  out.push_back({moves, true, std::nullopt});

  inside.resize(std::min<std::size_t>(inside.size(), 20));
  auto qne = check_quasi_nonexpansive(t, inside, samples, kSlack);
  qne.property_name = "convex_combination_quasi_nonexpansive[halfspace_pair]";
  out.push_back({qne, true, std::nullopt});
}

// Randomized (u, v, t) trials of the three quasi-nonexpansive inequalities.
void inequality_suite(std::vector<VerifyItem>& out) {
  struct Core {
    FixedPointMap map;
    ConvexSet region;
  };
  std::vector<Core> cores;
  for (const char* id : {"proj_box", "proj_ball", "proj_halfspace"}) {
    auto e = gallery_entry(id);
    cores.push_back({e.map, e.sample_region});
  }
  {
    auto e = gallery_entry("example1");
    cores.push_back({krasnoselskij_average(e.map, 0.2).map, e.sample_region});
    auto aff = gallery_entry("affine");
    cores.push_back({krasnoselskij_average(aff.map, 1.0 / 3.0).map, aff.sample_region});
  }

  std::vector<PropertyReport> agg;
  for (const char* name : {"qne_inner_product_bound", "qne_relaxed_distance_decrease", "qne_relaxed_inner_product_bound"})
    agg.push_back(empty_report(std::string(name) + "[gallery]", kSlack));

  Rng rng(kSampleSeed);
  for (int trial = 0; trial < 1000; ++trial) {
    const Core& c = cores[static_cast<std::size_t>(trial) % cores.size()];
    const auto& box = std::get<ConvexSet::Box>(c.region.variant());
    Vector u(c.map.dim());
    for (std::size_t i = 0; i < u.dim(); ++i) u[i] = rng.uniform(box.lower[i], box.upper[i]);
    const auto& fps = c.map.known_fixed_points();
    const Vector& v = fps[rng.next() % fps.size()];
    const double t = 1.0 - rng.uniform();  // (0, 1]
    const auto reports = check_quasi_nonexpansive_inequalities(c.map, t, u, v, kSlack);
    for (std::size_t k = 0; k < 3; ++k) agg[k].record(reports[k].worst_violation, u, v);
  }
  for (auto& r : agg) out.push_back({r, true, std::nullopt});
}

void example_constant(std::vector<VerifyItem>& out) {
  const GalleryEntry e = gallery_entry("example1");
  const Vector v{7.0 / 8.0};
  const double estimate = estimate_demicontractive_constant(e.map, v, standard_samples(e));
  auto r = empty_report("demicontractive_constant[example1]", 1e-9);
  r.record(std::abs(estimate - 2.0 / 3.0), Vector{1.0}, v);
  out.push_back({r, true, estimate});

  for (double nu : {1.0 / 3.0 - 0.05, 1.0 / 3.0 + 0.05}) {
    const AveragedMap avg = krasnoselskij_average(e.map, nu);
    auto q = check_quasi_nonexpansive(avg.map, {v}, standard_samples(e), kSlack);
    q.property_name = "averaged_quasi_nonexpansive[" + tag("example1", nu) + "]";
    out.push_back({q, nu < 1.0 / 3.0, std::nullopt});
  }
}

void projection_agreement(std::vector<VerifyItem>& out) {
  auto r = empty_report("dykstra_matches_qp_oracle[50_instances]", 1e-6);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ProjectionInstance inst = random_projection_instance(seed);
    const Vector dykstra = project_onto_intersection(inst.cuts, inst.u0, kDefaultDykstraTol, kDefaultDykstraMaxSweeps,
                                                     nullptr, nullptr, ActiveSetRefinement::disabled);
    const QpOracleResult exact = qp_projection_oracle(inst.cuts, inst.u0);
    if (!exact.point) throw Error("QP oracle found no feasible point for instance " + std::to_string(seed));
    r.record(distance(dykstra, *exact.point), dykstra, *exact.point);
  }
  out.push_back({r, true, std::nullopt});
}

}  // namespace

std::string format_item(const VerifyItem& item) {
  std::string line = format_report(item.report) + " expected=" + (item.expect_pass ? "PASS" : "FAIL");
  if (item.value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *item.value);
    line += std::string(" value=") + buf;
  }
  return line;
}

std::vector<VerifyItem> verify_lemmas() {
  std::vector<VerifyItem> out;
  for (const auto& e : standard_gallery()) {
    const auto samples = standard_samples(e);
    averaging_constants(e, samples, out);
    for (double nu : {0.1, 0.5, 0.9}) fixed_point_preservation(e, samples, nu, out);
    quasi_nonexpansive_embedding(e, samples, out);
  }
  convex_combination_suite(out);
  inequality_suite(out);
  example_constant(out);
  projection_agreement(out);
  return out;
}

std::vector<VerifyItem> verify_map(const std::string& id) {
  const GalleryEntry e = gallery_entry(id);
  const auto samples = standard_samples(e);
  const double beta = *e.map.declared_beta();
  std::vector<VerifyItem> out;

  const double estimate = max_constant(e.map, samples);
  auto sound = empty_report("demicontractive_constant[" + id + "]", kSlack);
  sound.record(estimate - beta, Vector{estimate}, Vector{beta});
  out.push_back({sound, true, estimate});

  auto raw = check_quasi_nonexpansive(e.map, e.map.known_fixed_points(), samples, kSlack);
  out.push_back({raw, beta == 0.0, std::nullopt});

  const double nu = 0.5 * (1.0 - beta);
  auto averaged = check_quasi_nonexpansive(krasnoselskij_average(e.map, nu).map, e.map.known_fixed_points(), samples, kSlack);
  averaged.property_name = "averaged_quasi_nonexpansive[" + tag(id, nu) + "]";
  out.push_back({averaged, true, std::nullopt});

  for (double n : {0.1, 0.5, 0.9}) fixed_point_preservation(e, samples, n, out);
  return out;
}

std::optional<std::vector<VerifyItem>> verify_scope(const std::string& scope) {
  if (scope == "lemmas") return verify_lemmas();
  if (scope.rfind("map:", 0) == 0) {
    const std::string id = scope.substr(4);
    const auto& ids = gallery_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) return std::nullopt;
    return verify_map(id);
  }
  if (scope == "all") {
    auto out = verify_lemmas();
    for (const auto& id : gallery_ids()) {
      auto more = verify_map(id);
      out.insert(out.end(), more.begin(), more.end());
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace splitfix
