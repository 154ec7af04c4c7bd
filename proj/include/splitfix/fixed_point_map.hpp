#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splitfix/convex_set.hpp"
#include "splitfix/vector.hpp"

namespace splitfix {

/// Declared properties of a map. None of them is inferred from the evaluator;
/// the diagnostics module can only try to refute them by sampling.
struct MapTraits {
  /// Demicontractivity constant beta in [0, 1); 0 declares quasi-nonexpansive.
  std::optional<double> declared_beta;
  /// F - I demiclosed at zero.
  bool declared_demiclosed = false;
  /// Each must satisfy ||F(v) - v|| <= 1e-10; checked at construction.
  std::vector<Vector> known_fixed_points;
  /// Evaluating outside this set is an error.
  std::optional<ConvexSet> domain;
};

inline constexpr double kFixedPointTol = 1e-10;
inline constexpr double kDomainTol = 1e-12;

/// A self-map of R^n together with its declared operator-class metadata.
class FixedPointMap {
public:
  using Evaluator = std::function<Vector(const Vector&)>;

  FixedPointMap(std::string name, std::size_t dim, Evaluator evaluator, MapTraits traits = {});

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  const MapTraits& traits() const noexcept { return traits_; }
  std::optional<double> declared_beta() const noexcept { return traits_.declared_beta; }
  bool declared_demiclosed() const noexcept { return traits_.declared_demiclosed; }
  const std::vector<Vector>& known_fixed_points() const noexcept { return traits_.known_fixed_points; }
  const std::optional<ConvexSet>& domain() const noexcept { return traits_.domain; }

  bool declared_quasi_nonexpansive() const noexcept {
    return traits_.declared_beta && *traits_.declared_beta == 0.0;
  }

  /// Throws DimensionError or DomainError on a bad argument.
  Vector evaluate(const Vector& u) const;
  Vector operator()(const Vector& u) const { return evaluate(u); }

  /// ||F(u) - u||.
  double residual(const Vector& u) const { return distance(evaluate(u), u); }

private:
  std::string name_;
  std::size_t dim_;
  Evaluator evaluator_;
  MapTraits traits_;
};

inline Vector evaluate(const FixedPointMap& f, const Vector& u) { return f.evaluate(u); }

/// Krasnoselskij perturbation F_nu = (1 - nu) I + nu F together with the
/// demicontractivity constant it inherits.
struct AveragedMap {
  FixedPointMap map;
  double nu;
  /// 1 + beta/nu - 1/nu when the base declares beta. A value <= 0 means
  /// the averaged map is quasi-nonexpansive.
  std::optional<double> perturbed_constant;

  bool quasi_nonexpansive() const { return perturbed_constant && *perturbed_constant <= 0.0; }
};

/// 1 + beta/nu - 1/nu.
double perturbed_constant(double beta, double nu);

/// Requires 0 < nu < 1. The result keeps the base's fixed points, domain and
/// demiclosedness flag; its declared beta is max(0, perturbed constant).
AveragedMap krasnoselskij_average(const FixedPointMap& f, double nu);

/// T = sum_i b_i ((1 - a_i) I + a_i F_i) over quasi-nonexpansive maps, with
/// b_i in (0, 1] summing to 1 (tolerance 1e-12) and a_i in (0, 1). T is
/// declared quasi-nonexpansive. Its known fixed points are those known fixed
/// points of the F_i that every F_i fixes.
FixedPointMap convex_combination(const std::vector<FixedPointMap>& maps, const std::vector<double>& weights,
                                 const std::vector<double>& inner_weights);

/// Metric projection onto a nonempty closed convex set as a nonexpansive map
/// (declared beta 0, demiclosed, with a few points of the set as known fixed
/// points).
FixedPointMap projection_as_map(const ConvexSet& set);

FixedPointMap identity_map(std::size_t dim);

/// The scalar map on [0, 1] equal to 7/8 on [0, 1) and 1/4 at 1. It is
/// demicontractive with constant 2/3 but not quasi-nonexpansive; its only
/// fixed point is 7/8.
FixedPointMap example1_map();

/// u -> center + M (u - center). The caller declares beta; the center is the
/// known fixed point.
FixedPointMap affine_map(Matrix m, Vector center, double beta);

}  // namespace splitfix
