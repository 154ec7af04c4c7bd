#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "splitfix/linear_operator.hpp"
#include "splitfix/vector.hpp"

namespace splitfix {

/// {u : <normal, u> <= offset} with a nonzero normal.
struct Halfspace {
  Vector normal;
  double offset = 0.0;

  /// Signed constraint value <normal, u> - offset; positive means violated.
  double slack(const Vector& u) const { return inner(normal, u) - offset; }
};

/// Closed convex subset of R^n with an exact metric projection.
class ConvexSet {
public:
  struct WholeSpace {
    std::size_t dim;
  };
  struct Box {
    Vector lower, upper;
  };
  struct Ball {
    Vector center;
    double radius;
  };
  struct Affine {
    Matrix matrix;
    Vector rhs;
    Matrix gram;  // matrix * matrix^T
  };
  using Variant = std::variant<WholeSpace, Box, Ball, Halfspace, Affine>;

  static ConvexSet whole_space(std::size_t dim);
  /// Throws if lower > upper in any coordinate (empty box).
  static ConvexSet box(Vector lower, Vector upper);
  static ConvexSet ball(Vector center, double radius);
  /// {u : <normal, u> <= offset}; throws on a zero normal.
  static ConvexSet halfspace(Vector normal, double offset);
  /// {u : M u = rhs}; M must have full row rank.
  static ConvexSet affine(Matrix matrix, Vector rhs);

  std::size_t dim() const noexcept;
  const Variant& variant() const noexcept { return variant_; }
  bool is_whole_space() const noexcept { return std::holds_alternative<WholeSpace>(variant_); }
  const Halfspace* as_halfspace() const noexcept { return std::get_if<Halfspace>(&variant_); }

  Vector project(const Vector& u) const;
  /// Euclidean distance from u to the set.
  double distance_to(const Vector& u) const { return distance(project(u), u); }
  bool contains(const Vector& u, double tol = 1e-10) const { return distance_to(u) <= tol; }

  /// A deterministic point of the set.
  Vector sample_point() const;

  std::string describe() const;

private:
  explicit ConvexSet(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

inline Vector project(const ConvexSet& set, const Vector& u) { return set.project(u); }

/// The set of points at least as close to `near` as to `far`, written as the
/// halfspace <2(far - near), u> <= ||far||^2 - ||near||^2. When near == far
/// the inequality always holds and the whole space is returned.
ConvexSet fejer_cut(const Vector& near, const Vector& far);

}  // namespace splitfix
