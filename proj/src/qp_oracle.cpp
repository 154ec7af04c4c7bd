#include "splitfix/qp_oracle.hpp"

#include "splitfix/random.hpp"

#include <cmath>
#include <vector>

namespace splitfix {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kMultiplierTol = 1e-10;

std::vector<Halfspace> as_constraints(const CutList& cuts) {
  std::vector<Halfspace> out;
  const std::size_t n = cuts.dim();
  if (const auto* box = std::get_if<ConvexSet::Box>(&cuts.base().variant())) {
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(n);
      e[i] = 1.0;
      out.push_back({e, box->upper[i]});
      out.push_back({-e, -box->lower[i]});
    }
  } else if (!cuts.base().is_whole_space()) {
    throw ParameterError("QP oracle supports only a whole-space or box base, got " + cuts.base().describe());
  }
  out.insert(out.end(), cuts.cuts().begin(), cuts.cuts().end());
  return out;
}

// Minimizer of ||u - u0||^2 subject to <a_i, u> = b_i over the chosen rows,
// with the multipliers mu such that u = u0 - sum mu_i a_i.
std::optional<std::pair<Vector, std::vector<double>>> equality_projection(const std::vector<Halfspace>& cons,
                                                                          const std::vector<std::size_t>& active,
                                                                          const Vector& u0) {
  const std::size_t k = active.size();
  if (k == 0) return std::make_pair(u0, std::vector<double>{});
  Matrix gram(k, k);
  std::vector<double> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& hi = cons[active[i]];
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = inner(hi.normal, cons[active[j]].normal);
    rhs[i] = hi.slack(u0);
  }
  auto mu = solve_dense(gram, rhs, 1e-10);
  if (!mu) return std::nullopt;
  Vector u = u0;
  for (std::size_t i = 0; i < k; ++i) u -= (*mu)[i] * cons[active[i]].normal;
  return std::make_pair(std::move(u), std::move(*mu));
}

}  // namespace

QpOracleResult qp_projection_oracle(const CutList& cuts, const Vector& u0) {
  require_same_dim("qp_projection_oracle", cuts.dim(), u0.dim());
  const std::size_t n = cuts.dim();
  if (n > kQpOracleMaxDim) throw ParameterError("QP oracle limited to dimension <= 6");
  if (cuts.size() > kQpOracleMaxCuts) throw ParameterError("QP oracle limited to <= 20 cuts");

  const auto cons = as_constraints(cuts);
  const std::size_t m = cons.size();
  QpOracleResult result;

  std::vector<std::size_t> active;
  for (std::size_t k = 0; k <= std::min(n, m); ++k) {
    active.resize(k);
    for (std::size_t i = 0; i < k; ++i) active[i] = i;
    while (true) {
      ++result.candidates_tried;
      if (auto sol = equality_projection(cons, active, u0)) {
        const auto& [u, mu] = *sol;
        bool ok = true;
        for (double x : mu) ok = ok && x >= -kMultiplierTol;
        for (std::size_t i = 0; ok && i < m; ++i) ok = cons[i].slack(u) <= kFeasTol * (1.0 + norm(cons[i].normal));
        if (ok) {
          result.point = u;
          result.active_set_size = k;
          return result;
        }
      }
      // next k-combination of {0..m-1} in lexicographic order
      std::size_t pos = k;
      while (pos > 0 && active[pos - 1] == m - k + pos - 1) --pos;
      if (pos == 0) break;
      ++active[pos - 1];
      for (std::size_t j = pos; j < k; ++j) active[j] = active[j - 1] + 1;
    }
  }
  return result;
}

ProjectionInstance random_projection_instance(std::uint64_t seed) {
  Rng rng(seed);
  const bool boxed = rng.uniform() < 0.5;
  const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % (boxed ? 3 : 5));
  const std::size_t m = 1 + static_cast<std::size_t>(rng.next() % kQpOracleMaxCuts);

  const Vector inside = rng.uniform_vector(n, 0.2, 0.8);
  CutList cuts(boxed ? ConvexSet::box(Vector(n, 0.0), Vector(n, 1.0)) : ConvexSet::whole_space(n));
  while (cuts.size() < m) {
    Vector normal = rng.uniform_vector(n, -1.0, 1.0);
    if (norm(normal) < 0.1) continue;
    cuts.append(Halfspace{normal, inner(normal, inside) + rng.uniform(0.0, 0.3)});
  }
  return {std::move(cuts), rng.uniform_vector(n, -2.0, 3.0)};
}

}  // namespace splitfix
