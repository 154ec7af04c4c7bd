#include "splitfix/linear_operator.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "splitfix/random.hpp"

namespace splitfix {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw Error("matrix must have at least one row and column");
  rows_ = rows.size();
  cols_ = rows.front().size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix row", cols_, row.size());
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo, double hi) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(lo, hi);
  return m;
}

SpectralNonConvergence::SpectralNonConvergence(double last_estimate, int iterations)
    : Error("power iteration did not converge after " + std::to_string(iterations) +
            " iterations (last estimate " + std::to_string(last_estimate) + ")"),
      last_estimate_(last_estimate), iterations_(iterations) {}

struct LinearOperator::Cache {
  std::mutex mutex;
  std::optional<double> spectral_radius;
};

LinearOperator::LinearOperator(Matrix matrix)
    : matrix_(std::move(matrix)), cache_(std::make_shared<Cache>()) {
  if (matrix_.rows() == 0 || matrix_.cols() == 0) throw Error("linear operator needs a nonempty matrix");
  if (!matrix_.all_finite()) throw Error("linear operator matrix has non-finite entries");
}

Vector LinearOperator::apply(const Vector& u) const {
  require_same_dim("apply", dim_in(), u.dim());
  Vector out(dim_out());
  for (std::size_t r = 0; r < dim_out(); ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < dim_in(); ++c) sum += matrix_(r, c) * u[c];
    out[r] = sum;
  }
  return out;
}

Vector LinearOperator::adjoint_apply(const Vector& w) const {
  require_same_dim("adjoint_apply", dim_out(), w.dim());
  Vector out(dim_in());
  for (std::size_t r = 0; r < dim_out(); ++r) {
    const double wr = w[r];
    for (std::size_t c = 0; c < dim_in(); ++c) out[c] += matrix_(r, c) * wr;
  }
  return out;
}

std::optional<double> LinearOperator::cached_spectral_radius() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->spectral_radius;
}

double estimate_spectral_radius(const LinearOperator& op, double tol, int max_iters) {
  if (!(tol > 0.0)) throw ParameterError("spectral tol must be > 0");
  if (max_iters < 1) throw ParameterError("spectral max_iters must be >= 1");

  Rng rng(kPowerIterationSeed);
  Vector x = rng.uniform_vector(op.dim_in(), -1.0, 1.0);
  double x_norm = norm(x);
  if (x_norm == 0.0) x = Vector(op.dim_in(), 1.0), x_norm = norm(x);
  x *= 1.0 / x_norm;

  auto store = [&op](double value) {
    std::lock_guard lock(op.cache_->mutex);
    if (!op.cache_->spectral_radius) op.cache_->spectral_radius = value;
    return value;
  };

  double estimate = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    Vector ax = op.apply(x);
    const double rayleigh = norm_sq(ax);  // <x, A*A x> for unit x
    Vector next = op.adjoint_apply(ax);
    const double next_norm = norm(next);
    if (next_norm == 0.0) return store(0.0);

    if (it > 1 && std::abs(rayleigh - estimate) <= tol * std::max(rayleigh, estimate)) {
      return store(rayleigh);
    }
    estimate = rayleigh;
    next *= 1.0 / next_norm;
    x = std::move(next);
  }
  throw SpectralNonConvergence(estimate, max_iters);
}

double adjoint_norm_sq(const LinearOperator& op) {
  if (auto cached = op.cached_spectral_radius()) return *cached;
  return estimate_spectral_radius(op);
}

std::optional<std::vector<double>> solve_dense(Matrix m, std::vector<double> rhs, double singular_tol) {
  const std::size_t n = m.rows();
  require_same_dim("solve_dense (square)", n, m.cols());
  require_same_dim("solve_dense (rhs)", n, rhs.size());

  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(m(r, c)));
  if (scale == 0.0) return std::nullopt;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(m(r, k)) > std::abs(m(pivot, k))) pivot = r;
    if (std::abs(m(pivot, k)) <= singular_tol * scale) return std::nullopt;
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(pivot, c));
      std::swap(rhs[k], rhs[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = m(r, k) / m(k, k);
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
      rhs[r] -= f * rhs[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double sum = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) sum -= m(i, c) * x[c];
    x[i] = sum / m(i, i);
  }
  return x;
}

}  // namespace splitfix
