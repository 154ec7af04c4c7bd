#include "splitfix/fixed_point_map.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "splitfix/error.hpp"

namespace splitfix {

FixedPointMap::FixedPointMap(std::string name, std::size_t dim, Evaluator evaluator, MapTraits traits)
    : name_(std::move(name)), dim_(dim), evaluator_(std::move(evaluator)), traits_(std::move(traits)) {
  if (dim_ == 0) throw Error("map '" + name_ + "' needs dimension >= 1");
  if (!evaluator_) throw Error("map '" + name_ + "' has no evaluator");
  if (traits_.declared_beta) {
    const double beta = *traits_.declared_beta;
    if (!(beta >= 0.0 && beta < 1.0))
      throw ParameterError("map '" + name_ + "': declared beta must lie in [0, 1), got " + std::to_string(beta));
  }
  if (traits_.domain) require_same_dim(("domain of map '" + name_ + "'").c_str(), dim_, traits_.domain->dim());
  for (const auto& v : traits_.known_fixed_points) {
    const double r = residual(v);
    if (r > kFixedPointTol)
      throw Error("map '" + name_ + "': declared fixed point " + to_string(v) + " has residual " + std::to_string(r));
  }
}

Vector FixedPointMap::evaluate(const Vector& u) const {
  require_same_dim(("argument of map '" + name_ + "'").c_str(), dim_, u.dim());
  if (traits_.domain && !traits_.domain->contains(u, kDomainTol))
    throw DomainError("map '" + name_ + "' evaluated at " + to_string(u) + " outside its domain " +
                      traits_.domain->describe());
  Vector out = evaluator_(u);
  require_same_dim(("value of map '" + name_ + "'").c_str(), dim_, out.dim());
  return out;
}

double perturbed_constant(double beta, double nu) { return 1.0 + beta / nu - 1.0 / nu; }

AveragedMap krasnoselskij_average(const FixedPointMap& f, double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw ParameterError("averaging weight nu must lie in (0, 1), got " + std::to_string(nu));

  std::optional<double> constant;
  MapTraits traits = f.traits();
  if (f.declared_beta()) {
    constant = perturbed_constant(*f.declared_beta(), nu);
    traits.declared_beta = std::max(0.0, *constant);
  }
  auto base = std::make_shared<FixedPointMap>(f);
  FixedPointMap averaged(
      f.name() + "_avg(" + std::to_string(nu) + ")", f.dim(),
      [base, nu](const Vector& u) { return lerp(u, base->evaluate(u), nu); }, std::move(traits));
  return AveragedMap{std::move(averaged), nu, constant};
}

FixedPointMap convex_combination(const std::vector<FixedPointMap>& maps, const std::vector<double>& weights,
                                 const std::vector<double>& inner_weights) {
  if (maps.empty()) throw ParameterError("convex_combination needs at least one map");
  if (weights.size() != maps.size() || inner_weights.size() != maps.size())
    throw ParameterError("convex_combination: " + std::to_string(maps.size()) + " maps but " +
                         std::to_string(weights.size()) + " weights and " + std::to_string(inner_weights.size()) +
                         " inner weights");
  const std::size_t dim = maps.front().dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    require_same_dim("convex_combination member", dim, maps[i].dim());
    if (!maps[i].declared_quasi_nonexpansive())
      throw ParameterError("convex_combination: map '" + maps[i].name() + "' is not declared quasi-nonexpansive");
    if (!(weights[i] > 0.0 && weights[i] <= 1.0))
      throw ParameterError("convex_combination: weight b_" + std::to_string(i) + " must lie in (0, 1]");
    if (!(inner_weights[i] > 0.0 && inner_weights[i] < 1.0))
      throw ParameterError("convex_combination: inner weight a_" + std::to_string(i) + " must lie in (0, 1)");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ParameterError("convex_combination: weights must sum to 1, got " + std::to_string(sum));

  MapTraits traits;
  traits.declared_beta = 0.0;
  traits.declared_demiclosed =
      std::all_of(maps.begin(), maps.end(), [](const auto& m) { return m.declared_demiclosed(); });
  for (const auto& candidate_source : maps)
    for (const auto& v : candidate_source.known_fixed_points()) {
      const bool fixed_by_all = std::all_of(maps.begin(), maps.end(), [&](const FixedPointMap& m) {
        if (m.domain() && !m.domain()->contains(v, kDomainTol)) return false;
        return m.residual(v) <= kFixedPointTol;
      });
      if (fixed_by_all) traits.known_fixed_points.push_back(v);
    }

  std::string name = "convex_combination(";
  for (std::size_t i = 0; i < maps.size(); ++i) name += (i ? "," : "") + maps[i].name();
  name += ")";

  auto members = std::make_shared<std::vector<FixedPointMap>>(maps);
  FixedPointMap::Evaluator eval = [members, weights, inner_weights](const Vector& u) {
    Vector out(u.dim());
    for (std::size_t i = 0; i < members->size(); ++i) out += weights[i] * lerp(u, (*members)[i].evaluate(u), inner_weights[i]);
    return out;
  };
  return FixedPointMap(std::move(name), dim, std::move(eval), std::move(traits));
}

FixedPointMap projection_as_map(const ConvexSet& set) {
  MapTraits traits;
  traits.declared_beta = 0.0;
  traits.declared_demiclosed = true;
  const std::size_t n = set.dim();
  traits.known_fixed_points = {set.sample_point(), set.project(Vector(n, 3.0)), set.project(Vector(n, -3.0))};
  return FixedPointMap("proj[" + set.describe() + "]", n, [set](const Vector& u) { return set.project(u); },
                       std::move(traits));
}

FixedPointMap identity_map(std::size_t dim) {
  MapTraits traits;
  traits.declared_beta = 0.0;
  traits.declared_demiclosed = true;
  traits.known_fixed_points = {Vector(dim)};
  return FixedPointMap("identity", dim, [](const Vector& u) { return u; }, std::move(traits));
}

FixedPointMap example1_map() {
  MapTraits traits;
  traits.declared_beta = 2.0 / 3.0;
  traits.declared_demiclosed = true;
  traits.known_fixed_points = {Vector{7.0 / 8.0}};
  traits.domain = ConvexSet::box(Vector{0.0}, Vector{1.0});
  return FixedPointMap("example1", 1,
                       [](const Vector& u) { return Vector{u[0] < 1.0 ? 7.0 / 8.0 : 1.0 / 4.0}; },
                       std::move(traits));
}

FixedPointMap affine_map(Matrix m, Vector center, double beta) {
  require_same_dim("affine map (square)", m.rows(), m.cols());
  require_same_dim("affine map center", m.cols(), center.dim());
  MapTraits traits;
  traits.declared_beta = beta;
  traits.declared_demiclosed = true;
  traits.known_fixed_points = {center};
  const std::size_t n = center.dim();
  LinearOperator op(std::move(m));
  return FixedPointMap("affine", n, [op, center](const Vector& u) { return center + op.apply(u - center); },
                       std::move(traits));
}

}  // namespace splitfix
