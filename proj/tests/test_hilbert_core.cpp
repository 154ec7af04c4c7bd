#include <gtest/gtest.h>

#include <cmath>

#include "oracles/jacobi_eigen.hpp"
#include "splitfix/linear_operator.hpp"
#include "splitfix/random.hpp"

using namespace splitfix;

namespace {

oracle::Dense dense_of(const Matrix& m) {
  oracle::Dense d(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) d[r][c] = m(r, c);
  return d;
}

Vector random_unit(Rng& rng, std::size_t n) {
  Vector v = rng.uniform_vector(n, -1.0, 1.0);
  return (1.0 / norm(v)) * v;
}

}  // namespace

TEST(Inner, SmallCases) {
  EXPECT_EQ(inner(Vector{1, 0}, Vector{0, 1}), 0.0);
  EXPECT_EQ(inner(Vector{1, 2}, Vector{3, 4}), 11.0);
  const Vector u{3, 4};
  EXPECT_EQ(inner(u, u), 25.0);
  EXPECT_EQ(norm(u), 5.0);
}

TEST(Inner, DimensionMismatchNamesBothSizes) {
  try {
    inner(Vector{1, 2}, Vector{1, 2, 3});
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_EQ(e.expected(), 2u);
    EXPECT_EQ(e.actual(), 3u);
  }
}

TEST(Vector, RejectsNonFiniteWhenAsked) {
  EXPECT_THROW(require_finite(Vector{1.0, NAN}, "u"), Error);
  EXPECT_NO_THROW(require_finite(Vector{1.0, 2.0}, "u"));
}

TEST(Apply, SmallCases) {
  EXPECT_EQ(LinearOperator::identity(2).apply(Vector{5, 7}), (Vector{5, 7}));
  EXPECT_EQ(LinearOperator(Matrix({{2, 0}, {0, 1}})).apply(Vector{1, 1}), (Vector{2, 1}));
  EXPECT_EQ(LinearOperator(Matrix({{1, 2, 3}})).apply(Vector{1, 1, 1}), (Vector{6}));
  EXPECT_THROW(LinearOperator(Matrix({{1, 2, 3}})).apply(Vector{1, 1}), DimensionError);
}

TEST(AdjointApply, SmallCases) {
  EXPECT_EQ(LinearOperator::identity(3).adjoint_apply(Vector{1, 2, 3}), (Vector{1, 2, 3}));
  EXPECT_EQ(LinearOperator(Matrix({{1, 2, 3}})).adjoint_apply(Vector{2}), (Vector{2, 4, 6}));
  EXPECT_THROW(LinearOperator(Matrix({{1, 2, 3}})).adjoint_apply(Vector{1, 1}), DimensionError);
}

TEST(AdjointApply, AdjointIdentityOnRandomPairs) {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const LinearOperator a(random_matrix(3, 2, 100 + k));
    for (int i = 0; i < 100; ++i) {
      const Vector u = rng.uniform_vector(2, -5.0, 5.0);
      const Vector w = rng.uniform_vector(3, -5.0, 5.0);
      EXPECT_LE(std::abs(inner(a.apply(u), w) - inner(u, a.adjoint_apply(w))), 1e-12 * (1.0 + norm(u) * norm(w)));
    }
  }
}

TEST(SpectralRadius, Identity) { EXPECT_NEAR(estimate_spectral_radius(LinearOperator::identity(2)), 1.0, 1e-14); }

TEST(SpectralRadius, Diagonal) {
  EXPECT_NEAR(estimate_spectral_radius(LinearOperator(Matrix({{2, 0}, {0, 1}}))), 4.0, 4e-12);
}

TEST(SpectralRadius, RandomMatrixAgainstJacobi) {
  const Matrix m = random_matrix(4, 3, 11);
  const double expected = oracle::largest_gram_eigenvalue(dense_of(m));
  EXPECT_NEAR(estimate_spectral_radius(LinearOperator(m)) / expected, 1.0, 1e-8);
}

TEST(SpectralRadius, ValidatesArguments) {
  const auto a = LinearOperator::identity(2);
  EXPECT_THROW(estimate_spectral_radius(a, 0.0, 10), ParameterError);
  EXPECT_THROW(estimate_spectral_radius(a, 1e-10, 0), ParameterError);
}

TEST(SpectralRadius, NonConvergenceCarriesLastEstimate) {
  const LinearOperator a(Matrix({{2, 0}, {0, 1.9}}));
  try {
    estimate_spectral_radius(a, 1e-15, 2);
    FAIL() << "expected SpectralNonConvergence";
  } catch (const SpectralNonConvergence& e) {
    EXPECT_GT(e.last_estimate(), 1.9 * 1.9);
    EXPECT_LE(e.last_estimate(), 4.0);
    EXPECT_EQ(e.iterations(), 2);
  }
}

TEST(AdjointNormSq, Cases) {
  EXPECT_NEAR(adjoint_norm_sq(LinearOperator::identity(3)), 1.0, 1e-14);
  EXPECT_NEAR(adjoint_norm_sq(LinearOperator(Matrix({{2, 0}, {0, 1}}))), 4.0, 4e-12);
  EXPECT_EQ(adjoint_norm_sq(LinearOperator(Matrix(2, 3, 0.0))), 0.0);
}

TEST(SpectralRadius, BoundsRandomUnitVectors) {
  Rng rng(3);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const LinearOperator a(random_matrix(3, 4, seed));
    const double lambda = estimate_spectral_radius(a);
    for (int i = 0; i < 1000; ++i) EXPECT_LE(norm_sq(a.apply(random_unit(rng, 4))), lambda * (1.0 + 1e-6));
  }
}

TEST(SpectralRadius, CacheIsWrittenOnceAndCoherent) {
  const LinearOperator a(random_matrix(5, 4, 9));
  EXPECT_FALSE(a.cached_spectral_radius().has_value());
  const double first = estimate_spectral_radius(a);
  ASSERT_TRUE(a.cached_spectral_radius().has_value());
  EXPECT_EQ(*a.cached_spectral_radius(), first);

  const LinearOperator copy = a;
  const double fresh = estimate_spectral_radius(LinearOperator(a.matrix()));
  EXPECT_NEAR(*copy.cached_spectral_radius() / fresh, 1.0, 1e-9);
  EXPECT_EQ(adjoint_norm_sq(a), first);
}

TEST(SpectralRadius, DeterministicAcrossCalls) {
  const Matrix m = random_matrix(6, 6, 21);
  EXPECT_EQ(estimate_spectral_radius(LinearOperator(m)), estimate_spectral_radius(LinearOperator(m)));
}

TEST(RandomMatrix, SeededAndBounded) {
  const Matrix a = random_matrix(3, 4, 5, -2.0, 1.0);
  EXPECT_EQ(a, random_matrix(3, 4, 5, -2.0, 1.0));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      EXPECT_GE(a(r, c), -2.0);
      EXPECT_LT(a(r, c), 1.0);
    }
}

TEST(Matrix, RaggedRowsRejected) { EXPECT_THROW(Matrix({{1, 2}, {3}}), DimensionError); }
