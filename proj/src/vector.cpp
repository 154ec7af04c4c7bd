#include "splitfix/vector.hpp"

#include <cmath>
#include <cstdio>

#include "splitfix/error.hpp"

namespace splitfix {

Vector::Vector(std::size_t dim, double fill) : coords_(dim, fill) {}

Vector::Vector(std::initializer_list<double> coords) : coords_(coords) {}

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {}

bool Vector::all_finite() const noexcept {
  for (double c : coords_)
    if (!std::isfinite(c)) return false;
  return true;
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim("vector add", dim(), other.dim());
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim("vector subtract", dim(), other.dim());
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (double& c : coords_) c *= s;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator-(Vector v) { return v *= -1.0; }
Vector operator*(double s, Vector v) { return v *= s; }
Vector operator*(Vector v, double s) { return v *= s; }

double inner(const Vector& u, const Vector& v) {
  require_same_dim("inner product", u.dim(), v.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) sum += u[i] * v[i];
  return sum;
}

double norm_sq(const Vector& u) { return inner(u, u); }

double norm(const Vector& u) { return std::sqrt(norm_sq(u)); }

double distance_sq(const Vector& u, const Vector& v) {
  require_same_dim("distance", u.dim(), v.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    const double d = u[i] - v[i];
    sum += d * d;
  }
  return sum;
}

double distance(const Vector& u, const Vector& v) { return std::sqrt(distance_sq(u, v)); }

Vector lerp(const Vector& u, const Vector& v, double w) {
  require_same_dim("lerp", u.dim(), v.dim());
  Vector out(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) out[i] = u[i] + w * (v[i] - u[i]);
  return out;
}

void require_finite(const Vector& v, const std::string& what) {
  if (!v.all_finite()) throw DivergenceError("non-finite value in " + what + ": " + to_string(v));
}

std::string to_string(const Vector& v) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < v.dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

}  // namespace splitfix
