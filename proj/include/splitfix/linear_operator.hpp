#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "splitfix/error.hpp"
#include "splitfix/vector.hpp"

namespace splitfix {

/// Row-major dense real matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Throws if rows are ragged or empty.
  explicit Matrix(const std::vector<std::vector<double>>& rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  bool all_finite() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Fixed-seed matrix with entries uniform on [lo, hi).
Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = -1.0, double hi = 1.0);

/// Raised when power iteration does not settle within its budget. Carries
/// the last Rayleigh-quotient estimate so callers may accept it with an
/// inflation factor.
class SpectralNonConvergence : public Error {
public:
  SpectralNonConvergence(double last_estimate, int iterations);
  double last_estimate() const noexcept { return last_estimate_; }
  int iterations() const noexcept { return iterations_; }

private:
  double last_estimate_;
  int iterations_;
};

/// Bounded linear operator A : R^n -> R^m backed by a dense matrix, with its
/// adjoint realized as the transpose. The spectral radius of A*A is computed
/// on demand and cached; the cache is write-once and shared between copies.
class LinearOperator {
public:
  explicit LinearOperator(Matrix matrix);

  static LinearOperator identity(std::size_t n) { return LinearOperator(Matrix::identity(n)); }

  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim_in() const noexcept { return matrix_.cols(); }
  std::size_t dim_out() const noexcept { return matrix_.rows(); }

  Vector apply(const Vector& u) const;
  Vector adjoint_apply(const Vector& w) const;

  std::optional<double> cached_spectral_radius() const;

private:
  friend double estimate_spectral_radius(const LinearOperator&, double, int);

  struct Cache;
  Matrix matrix_;
  std::shared_ptr<Cache> cache_;
};

inline Vector apply(const LinearOperator& op, const Vector& u) { return op.apply(u); }
inline Vector adjoint_apply(const LinearOperator& op, const Vector& w) { return op.adjoint_apply(w); }

inline constexpr std::uint64_t kPowerIterationSeed = 0x5eedf1e1dULL;
inline constexpr double kDefaultSpectralTol = 1e-13;
inline constexpr int kDefaultSpectralMaxIters = 200000;

/// Multiplier applied to a spectral estimate before it is used to bound a
/// step size, so that strict upper bounds stay strict under estimation error.
inline constexpr double kSpectralSafetyFactor = 1.01;

/// Largest eigenvalue of A*A by power iteration from a fixed-seed random unit
/// vector. Stops when the relative change of the Rayleigh quotient drops
/// below `tol`. The first successful result is cached on the operator.
double estimate_spectral_radius(const LinearOperator& op, double tol = kDefaultSpectralTol,
                                int max_iters = kDefaultSpectralMaxIters);

/// ||A*||^2 = ||A||^2, the spectral radius of A*A.
double adjoint_norm_sq(const LinearOperator& op);

/// Solves the square system M x = rhs by Gaussian elimination with partial
/// pivoting. Returns nullopt when a pivot falls below `singular_tol` relative
/// to the largest entry of M.
std::optional<std::vector<double>> solve_dense(Matrix m, std::vector<double> rhs,
                                               double singular_tol = 1e-12);

}  // namespace splitfix
