#include "splitfix/cut_list.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include <Eigen/Dense>

namespace splitfix {

CutList::CutList(ConvexSet base, std::size_t cap) : base_(std::move(base)), cap_(cap) {}

bool CutList::append(const ConvexSet& cut) {
  require_same_dim("cut", dim(), cut.dim());
  if (cut.is_whole_space()) return false;
  const Halfspace* h = cut.as_halfspace();
  if (!h) throw Error("cut list only accepts halfspaces, got " + cut.describe());
  return append(*h);
}

bool CutList::append(Halfspace cut) {
  require_same_dim("cut", dim(), cut.normal.dim());
  if (norm_sq(cut.normal) == 0.0) return false;
  cuts_.push_back(std::move(cut));
  if (cap_ > 0) {
    while (cuts_.size() > cap_) {
      cuts_.pop_front();
      ++first_index_;
    }
  }
  return true;
}

double CutList::max_violation(const Vector& u) const {
  double worst = base_.distance_to(u);
  for (const auto& h : cuts_) {
    const double s = h.slack(u);
    if (s > 0.0) worst = std::max(worst, s / norm(h.normal));
  }
  return worst;
}

namespace {

// One row <normal, x> <= offset of the polyhedral description, with the
// Dykstra multiplier it currently carries.
struct Row {
  Vector normal;
  double offset;
  double mult;
};

// Box faces come first (upper then lower per coordinate), then an optional
// base halfspace, then the cuts. Returns false for non-polyhedral bases.
bool polyhedral_rows(const CutList& cuts, const std::vector<double>& mult, const Vector& base_q,
                     std::vector<Row>& rows) {
  const std::size_t n = cuts.dim();
  rows.clear();
  const auto& base = cuts.base().variant();
  if (const auto* box = std::get_if<ConvexSet::Box>(&base)) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector e(n);
      e[j] = 1.0;
      rows.push_back({e, box->upper[j], std::max(0.0, base_q[j])});
      e[j] = -1.0;
      rows.push_back({e, -box->lower[j], std::max(0.0, -base_q[j])});
    }
  } else if (const auto* h = std::get_if<Halfspace>(&base)) {
    rows.push_back({h->normal, h->offset, std::max(0.0, inner(base_q, h->normal) / norm_sq(h->normal))});
  } else if (!std::holds_alternative<ConvexSet::WholeSpace>(base)) {
    return false;
  }
  for (std::size_t i = 0; i < cuts.size(); ++i)
    rows.push_back({cuts.cuts()[i].normal, cuts.cuts()[i].offset, mult[i]});
  return true;
}

// Dual active-set method of Goldfarb and Idnani for
//   min 1/2 ||x - u0||^2  subject to  <n_i, x> <= c_i,
// specialized to an identity Hessian. Starting from x = u0 with no active
// rows, it repeatedly picks the most violated row and moves along the part of
// its normal orthogonal to the active normals, dropping active rows whose
// multipliers would turn negative. Every iterate is dual feasible, so the
// first primal feasible one is the projection. On success writes the KKT
// multipliers into `rows` and the projection into `x`.
bool refine_active_set(std::vector<Row>& rows, const Vector& u0, double feas_tol, Vector& x) {
  const std::size_t n = u0.dim();
  const auto dim = static_cast<Eigen::Index>(n);
  auto to_eigen = [dim](const Vector& v) { return Eigen::Map<const Eigen::VectorXd>(v.data().data(), dim); };

  Eigen::VectorXd point = to_eigen(u0);
  std::vector<std::size_t> active;
  std::vector<double> mult;  // multipliers of the active rows, in order

  auto violation = [&](std::size_t r) {
    return (to_eigen(rows[r].normal).dot(point) - rows[r].offset) / to_eigen(rows[r].normal).norm();
  };

  const int max_steps = static_cast<int>(10 * (rows.size() + n)) + 50;
  std::size_t entering = rows.size();
  double entering_mult = 0.0;
  for (int step = 0; step < max_steps; ++step) {
    if (entering == rows.size()) {
      double worst = feas_tol;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (std::find(active.begin(), active.end(), r) != active.end()) continue;
        const double v = violation(r);
        if (v > worst) worst = v, entering = r;
      }
      if (entering == rows.size()) {
        for (auto& row : rows) row.mult = 0.0;
        for (std::size_t a = 0; a < active.size(); ++a) rows[active[a]].mult = mult[a];
        x = Vector(std::vector<double>(point.data(), point.data() + n));
        return true;
      }
      entering_mult = 0.0;
    }

    // The entering normal splits into N r (inside the active span) and z.
    const Eigen::VectorXd normal = to_eigen(rows[entering].normal);
    const auto k = static_cast<Eigen::Index>(active.size());
    Eigen::VectorXd r = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd z = normal;
    if (k > 0) {
      Eigen::MatrixXd m(dim, k);
      for (Eigen::Index a = 0; a < k; ++a) m.col(a) = to_eigen(rows[active[a]].normal);
      const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
      r = qr.solve(normal);
      z = normal - m * r;
    }
    const bool dependent = z.norm() <= 1e-12 * normal.norm();

    // Largest dual step before an active multiplier reaches zero.
    double t_dual = std::numeric_limits<double>::infinity();
    Eigen::Index leaving = -1;
    for (Eigen::Index a = 0; a < k; ++a)
      if (r(a) > 0.0 && mult[a] / r(a) < t_dual) t_dual = mult[a] / r(a), leaving = a;

    if (dependent) {
      if (leaving < 0) return false;  // constraints are inconsistent
      for (Eigen::Index a = 0; a < k; ++a) mult[a] -= t_dual * r(a);
      entering_mult += t_dual;
      active.erase(active.begin() + leaving);
      mult.erase(mult.begin() + leaving);
      continue;
    }

    const double gap = normal.dot(point) - rows[entering].offset;
    const double t_full = gap / z.squaredNorm();
    const double t = std::min(t_full, t_dual);
    point -= t * z;
    for (Eigen::Index a = 0; a < k; ++a) mult[a] -= t * r(a);
    entering_mult += t;
    if (t_full <= t_dual) {
      active.push_back(entering);
      mult.push_back(entering_mult);
      entering = rows.size();
    } else {
      active.erase(active.begin() + leaving);
      mult.erase(mult.begin() + leaving);
    }
  }
  return false;
}

}  // namespace

DykstraError::DykstraError(Vector last_iterate, double worst_violation, int sweeps, const std::string& context)
    : Error((context.empty() ? "" : context + ": ") + "Dykstra projection did not converge in " + std::to_string(sweeps) +
            " sweeps (worst violation " + std::to_string(worst_violation) +
            "); the intersection may be empty or the tolerance too tight"),
      last_iterate_(std::move(last_iterate)), worst_violation_(worst_violation) {}

Vector project_onto_intersection(const CutList& cuts, const Vector& u0, double tol, int max_sweeps,
                                 DykstraWarmStart* warm, DykstraStats* stats, ActiveSetRefinement refine) {
  require_same_dim("project_onto_intersection", cuts.dim(), u0.dim());
  if (!(tol > 0.0)) throw ParameterError("Dykstra tol must be > 0");
  if (max_sweeps < 1) throw ParameterError("Dykstra max_sweeps must be >= 1");

  const std::size_t n = u0.dim();
  const std::size_t m = cuts.size();
  const bool has_base = !cuts.base().is_whole_space();

  std::vector<double> mult(m, 0.0);
  Vector base_q(n);
  if (warm && warm->anchor == u0 && warm->base_correction.dim() == n) {
    base_q = warm->base_correction;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t abs = cuts.first_index() + i;
      if (abs >= warm->first_index && abs - warm->first_index < warm->cut_multipliers.size())
        mult[i] = warm->cut_multipliers[abs - warm->first_index];
    }
  }

  std::vector<double> normal_sq(m);
  for (std::size_t i = 0; i < m; ++i) normal_sq[i] = norm_sq(cuts.cuts()[i].normal);

  // Invariant: u0 = x + base_q + sum_i mult_i * normal_i.
  Vector x = u0 - base_q;
  for (std::size_t i = 0; i < m; ++i)
    if (mult[i] != 0.0) x -= mult[i] * cuts.cuts()[i].normal;

  if (!has_base && m == 0) {
    if (stats) *stats = {0, 0.0, 0.0, false};
    return u0;
  }

  std::vector<Row> rows;
  const bool can_refine = refine == ActiveSetRefinement::enabled && polyhedral_rows(cuts, mult, base_q, rows);
  bool refined = false;

  double violation = 0.0;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    // x can repeat across a sweep while the corrections still drift, so the
    // stopping test measures how far the corrections moved.
    double change_sq = 0.0;
    if (has_base) {
      Vector shifted = x + base_q;
      x = cuts.base().project(shifted);
      Vector next_q = shifted - x;
      change_sq += distance_sq(next_q, base_q);
      base_q = std::move(next_q);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Halfspace& h = cuts.cuts()[i];
      // Adding back the stored correction and projecting onto the halfspace
      // reduces to a clipped update of the scalar multiplier.
      const double old = mult[i];
      const double s = h.slack(x) + old * normal_sq[i];
      const double next = std::max(0.0, s / normal_sq[i]);
      if (next != old) {
        const double delta = old - next;
        for (std::size_t k = 0; k < n; ++k) x[k] += delta * h.normal[k];
        mult[i] = next;
        change_sq += delta * delta * normal_sq[i];
      }
    }
    require_finite(x, "Dykstra iterate");

    const double move = std::sqrt(change_sq);
    if (move <= tol) {
      violation = cuts.max_violation(x);
      if (violation <= 10.0 * tol) {
        if (warm) {
          warm->first_index = cuts.first_index();
          warm->cut_multipliers = std::move(mult);
          warm->base_correction = std::move(base_q);
          warm->anchor = u0;
        }
        if (stats) *stats = {sweep, move, violation, refined};
        return x;
      }
    }
    if (can_refine && sweep % kRefineInterval == 0) {
      polyhedral_rows(cuts, mult, base_q, rows);
      Vector solved;
      if (refine_active_set(rows, u0, tol, solved)) {
        // Translate row multipliers back into Dykstra's correction terms so
        // warm starts and later sweeps resume from the refined dual point.
        const std::size_t shift = rows.size() - m;
        if (std::holds_alternative<ConvexSet::Box>(cuts.base().variant())) {
          for (std::size_t j = 0; j < n; ++j) base_q[j] = rows[2 * j].mult - rows[2 * j + 1].mult;
        } else if (shift == 1) {
          base_q = rows[0].mult * rows[0].normal;
        }
        for (std::size_t i = 0; i < m; ++i) mult[i] = rows[shift + i].mult;
        x = std::move(solved);
        refined = true;
        // The refined point satisfies the KKT conditions, so it is the
        // projection; sweeping further only stirs roundoff.
        violation = cuts.max_violation(x);
        if (violation <= 10.0 * tol) {
          if (warm) {
            warm->first_index = cuts.first_index();
            warm->cut_multipliers = std::move(mult);
            warm->base_correction = std::move(base_q);
            warm->anchor = u0;
          }
          if (stats) *stats = {sweep, 0.0, violation, refined};
          return x;
        }
      }
    }
  }
  throw DykstraError(x, cuts.max_violation(x), max_sweeps);
}

}  // namespace splitfix
