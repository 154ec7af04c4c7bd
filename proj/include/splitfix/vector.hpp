#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace splitfix {

/// Dense real coordinate vector, an element of R^n with the Euclidean inner
/// product. Dimension is at least one and every coordinate is finite.
class Vector {
public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0);
  Vector(std::initializer_list<double> coords);
  explicit Vector(std::vector<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }
  const std::vector<double>& data() const noexcept { return coords_; }

  bool all_finite() const noexcept;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s) noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

private:
  std::vector<double> coords_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator-(Vector v);
Vector operator*(double s, Vector v);
Vector operator*(Vector v, double s);

double inner(const Vector& u, const Vector& v);
double norm_sq(const Vector& u);
double norm(const Vector& u);
double distance(const Vector& u, const Vector& v);
double distance_sq(const Vector& u, const Vector& v);

/// (1 - w) * u + w * v, evaluated as u + w * (v - u) so that v == u returns
/// u exactly. Averaged maps rely on this to keep fixed points bit-exact.
Vector lerp(const Vector& u, const Vector& v, double w);

/// Throws DivergenceError naming `what` when any coordinate is NaN/Inf.
void require_finite(const Vector& v, const std::string& what);

std::string to_string(const Vector& v);

}  // namespace splitfix
