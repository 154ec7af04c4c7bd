#include "splitfix/convex_set.hpp"

#include <algorithm>
#include <cmath>

#include "splitfix/error.hpp"

namespace splitfix {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

ConvexSet ConvexSet::whole_space(std::size_t dim) {
  if (dim == 0) throw Error("whole space needs dimension >= 1");
  return ConvexSet(WholeSpace{dim});
}

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  require_same_dim("box bounds", lower.dim(), upper.dim());
  if (lower.empty()) throw Error("box needs dimension >= 1");
  if (!lower.all_finite() || !upper.all_finite()) throw Error("box bounds must be finite");
  for (std::size_t i = 0; i < lower.dim(); ++i)
    if (lower[i] > upper[i])
      throw Error("empty box: lower[" + std::to_string(i) + "] > upper[" + std::to_string(i) + "]");
  return ConvexSet(Box{std::move(lower), std::move(upper)});
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (center.empty()) throw Error("ball needs dimension >= 1");
  if (!center.all_finite() || !std::isfinite(radius)) throw Error("ball parameters must be finite");
  if (radius < 0.0) throw Error("ball radius must be >= 0");
  return ConvexSet(Ball{std::move(center), radius});
}

ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
  if (normal.empty()) throw Error("halfspace needs dimension >= 1");
  if (!normal.all_finite() || !std::isfinite(offset)) throw Error("halfspace parameters must be finite");
  if (norm_sq(normal) == 0.0) throw Error("halfspace normal must be nonzero");
  return ConvexSet(Halfspace{std::move(normal), offset});
}

ConvexSet ConvexSet::affine(Matrix matrix, Vector rhs) {
  require_same_dim("affine set rhs", matrix.rows(), rhs.dim());
  if (!matrix.all_finite() || !rhs.all_finite()) throw Error("affine set parameters must be finite");
  Matrix gram(matrix.rows(), matrix.rows());
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.rows(); ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < matrix.cols(); ++c) s += matrix(i, c) * matrix(j, c);
      gram(i, j) = s;
    }
  if (!solve_dense(gram, std::vector<double>(matrix.rows(), 0.0)))
    throw Error("affine set matrix must have full row rank");
  return ConvexSet(Affine{std::move(matrix), std::move(rhs), std::move(gram)});
}

std::size_t ConvexSet::dim() const noexcept {
  return std::visit(overloaded{
                        [](const WholeSpace& s) { return s.dim; },
                        [](const Box& s) { return s.lower.dim(); },
                        [](const Ball& s) { return s.center.dim(); },
                        [](const Halfspace& s) { return s.normal.dim(); },
                        [](const Affine& s) { return s.matrix.cols(); },
                    },
                    variant_);
}

Vector ConvexSet::project(const Vector& u) const {
  require_same_dim("project", dim(), u.dim());
  return std::visit(
      overloaded{
          [&](const WholeSpace&) { return u; },
          [&](const Box& s) {
            Vector out = u;
            for (std::size_t i = 0; i < u.dim(); ++i) out[i] = std::clamp(u[i], s.lower[i], s.upper[i]);
            return out;
          },
          [&](const Ball& s) {
            const double d = distance(u, s.center);
            if (d <= s.radius) return u;
            return s.center + (s.radius / d) * (u - s.center);
          },
          [&](const Halfspace& s) {
            const double excess = s.slack(u);
            if (excess <= 0.0) return u;
            return u - (excess / norm_sq(s.normal)) * s.normal;
          },
          [&](const Affine& s) {
            std::vector<double> residual(s.matrix.rows());
            for (std::size_t r = 0; r < s.matrix.rows(); ++r) {
              double sum = -s.rhs[r];
              for (std::size_t c = 0; c < s.matrix.cols(); ++c) sum += s.matrix(r, c) * u[c];
              residual[r] = sum;
            }
            const auto mult = solve_dense(s.gram, residual, 0.0);
            Vector out = u;
            for (std::size_t r = 0; r < s.matrix.rows(); ++r)
              for (std::size_t c = 0; c < s.matrix.cols(); ++c) out[c] -= s.matrix(r, c) * (*mult)[r];
            return out;
          },
      },
      variant_);
}

Vector ConvexSet::sample_point() const {
  return std::visit(overloaded{
                        [](const WholeSpace& s) { return Vector(s.dim); },
                        [](const Box& s) { return lerp(s.lower, s.upper, 0.5); },
                        [](const Ball& s) { return s.center; },
                        [this](const Halfspace& s) { return project(Vector(s.normal.dim())); },
                        [this](const Affine& s) { return project(Vector(s.matrix.cols())); },
                    },
                    variant_);
}

std::string ConvexSet::describe() const {
  return std::visit(overloaded{
                        [](const WholeSpace& s) { return "whole_space(" + std::to_string(s.dim) + ")"; },
                        [](const Box& s) { return "box(" + to_string(s.lower) + ", " + to_string(s.upper) + ")"; },
                        [](const Ball& s) {
                          return "ball(" + to_string(s.center) + ", " + std::to_string(s.radius) + ")";
                        },
                        [](const Halfspace& s) {
                          return "halfspace(" + to_string(s.normal) + ", " + std::to_string(s.offset) + ")";
                        },
                        [](const Affine& s) {
                          return "affine(" + std::to_string(s.matrix.rows()) + "x" +
                                 std::to_string(s.matrix.cols()) + ")";
                        },
                    },
                    variant_);
}

ConvexSet fejer_cut(const Vector& near, const Vector& far) {
  require_same_dim("fejer_cut", near.dim(), far.dim());
  Vector normal = 2.0 * (far - near);
  if (norm_sq(normal) == 0.0) return ConvexSet::whole_space(near.dim());
  // ||far||^2 - ||near||^2 factored as <far - near, far + near>, which avoids
  // cancellation when the two points are close.
  const double offset = inner(far - near, far + near);
  return ConvexSet::halfspace(std::move(normal), offset);
}

}  // namespace splitfix
