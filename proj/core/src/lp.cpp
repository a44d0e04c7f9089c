#include "omdsim/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace omd {

namespace {

constexpr double kPivotTol = 1e-9;     // entries at or below this never act as pivots
constexpr double kPhaseOneTol = 1e-8;  // residual artificial mass accepted as "feasible"

// Full-tableau simplex state for the standard form  min d.x, Ax = b, x >= 0.
// Each row stores its coefficients followed by the right-hand side; `cost`
// is the reduced-cost row with the negated objective value in the last slot.
struct Tableau {
  std::vector<Vec> row;
  Vec cost;
  std::vector<int> basis;
  int n_cols = 0;

  double rhs(int i) const { return row[i][n_cols]; }

  void pivot(int r, int c) {
    Vec& pr = row[r];
    const double inv = 1.0 / pr[c];
    for (double& v : pr) v *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const double f = row[i][c];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_cols; ++j) row[i][j] -= f * pr[j];
      row[i][c] = 0.0;
    }
    const double f = cost[c];
    if (f != 0.0) {
      for (int j = 0; j <= n_cols; ++j) cost[j] -= f * pr[j];
      cost[c] = 0.0;
    }
    basis[r] = c;
  }

  // Rebuilds the reduced-cost row for objective d against the current basis.
  void load_costs(const Vec& d) {
    cost.assign(n_cols + 1, 0.0);
    for (int j = 0; j < n_cols; ++j) cost[j] = d[j];
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double f = d[basis[i]];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_cols; ++j) cost[j] -= f * row[i][j];
      cost[basis[i]] = 0.0;
    }
  }

  // Pivots to optimality under Bland's rule (lowest eligible column enters,
  // ratio ties broken by lowest basic index), which rules out cycling.
  // Columns at or past `limit` never enter. Returns false on unboundedness.
  bool optimize(int limit) {
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (cost[j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = 0.0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i][enter] <= kPivotTol) continue;
        const double ratio = rhs(i) / row[i][enter];
        if (leave < 0 || ratio < best - kPivotTol ||
            (ratio < best + kPivotTol && basis[i] < basis[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex failed to terminate within the iteration cap");
  }
};

// Certifies the returned optimum against the original data: primal
// feasibility within 1e-8, dual feasibility and complementary slackness
// within 1e-7 (all relative to the row/entry scale). Tableau drift past
// these residuals is a numerical breakdown worth failing loudly on.
void verify_optimal(const LinearProgram& lp, const Vec& lower,
                    const LpSolution& out) {
  const auto fail = [](const std::string& what) {
    throw std::runtime_error("solve_lp: optimality certificate failed: " + what);
  };
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(lp.objective.size());
  for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i) {
    const double lhs = dot(lp.eq_lhs[i], out.point);
    if (std::fabs(lhs - lp.eq_rhs[i]) >
        1e-8 * std::max({1.0, std::fabs(lhs), std::fabs(lp.eq_rhs[i])}))
      fail("equality row " + std::to_string(i) + " residual");
  }
  for (std::size_t j = 0; j < lp.ub_lhs.size(); ++j) {
    const double lhs = dot(lp.ub_lhs[j], out.point);
    const double scale = std::max({1.0, std::fabs(lhs), std::fabs(lp.ub_rhs[j])});
    if (lhs - lp.ub_rhs[j] > 1e-8 * scale)
      fail("inequality row " + std::to_string(j) + " residual");
    if (out.dual_ub[j] < -1e-7) fail("negative inequality dual");
    if (out.dual_ub[j] * (lp.ub_rhs[j] - lhs) > 1e-7 * scale)
      fail("complementary slackness on inequality row " + std::to_string(j));
  }
  for (int k = 0; k < n; ++k) {
    if (lower[k] != neg_inf && out.point[k] < lower[k] - 1e-8)
      fail("variable bound " + std::to_string(k));
    // Reduced cost c - E'λ - U'μ must vanish on free variables and be
    // nonpositive (with complementary slackness) on bounded ones.
    double rc = lp.objective[k];
    for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i)
      rc -= out.dual_eq[i] * lp.eq_lhs[i][k];
    for (std::size_t j = 0; j < lp.ub_lhs.size(); ++j)
      rc -= out.dual_ub[j] * lp.ub_lhs[j][k];
    const double scale = std::max(1.0, std::fabs(lp.objective[k]));
    if (lower[k] == neg_inf) {
      if (std::fabs(rc) > 1e-7 * scale) fail("free-variable stationarity");
    } else {
      if (rc > 1e-7 * scale) fail("dual feasibility on variable " + std::to_string(k));
      if (std::fabs(rc * (out.point[k] - lower[k])) > 1e-7 * std::max(scale, std::fabs(out.point[k])))
        fail("complementary slackness on variable " + std::to_string(k));
    }
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.objective.size());
  if (n == 0) throw std::invalid_argument("solve_lp: empty objective");
  const int n_eq = static_cast<int>(lp.eq_lhs.size());
  const int n_ub = static_cast<int>(lp.ub_lhs.size());
  if (static_cast<int>(lp.eq_rhs.size()) != n_eq ||
      static_cast<int>(lp.ub_rhs.size()) != n_ub) {
    throw std::invalid_argument("solve_lp: constraint sides disagree in length");
  }
  for (const Vec& r : lp.eq_lhs) {
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("solve_lp: bad equality row width");
  }
  for (const Vec& r : lp.ub_lhs) {
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("solve_lp: bad inequality row width");
  }
  const double neg_inf = -std::numeric_limits<double>::infinity();
  Vec lower = lp.var_lower;
  if (lower.empty()) lower.assign(n, 0.0);
  if (static_cast<int>(lower.size()) != n) {
    throw std::invalid_argument("solve_lp: var_lower length mismatch");
  }

  // Column layout: each original variable shifted so its bound sits at zero,
  // then a negative part for each free variable, one slack per <= row, and
  // one artificial per row. Starting with the all-artificial basis keeps the
  // setup uniform and leaves the duals readable off the artificial block.
  std::vector<int> neg_part(n, -1);
  int n_main = n;
  for (int k = 0; k < n; ++k) {
    if (lower[k] == neg_inf) neg_part[k] = n_main++;
  }
  const int m = n_eq + n_ub;
  const int slack0 = n_main;
  const int art0 = slack0 + n_ub;
  const int n_cols = art0 + m;

  Tableau t;
  t.n_cols = n_cols;
  t.row.assign(m, Vec(n_cols + 1, 0.0));
  t.basis.resize(m);
  Vec sign(m, 1.0);  // per-row flip applied to make every right-hand side nonnegative
  for (int i = 0; i < m; ++i) {
    const bool eq = i < n_eq;
    const Vec& src = eq ? lp.eq_lhs[i] : lp.ub_lhs[i - n_eq];
    double rhs = eq ? lp.eq_rhs[i] : lp.ub_rhs[i - n_eq];
    Vec& r = t.row[i];
    for (int k = 0; k < n; ++k) {
      r[k] = src[k];
      if (neg_part[k] >= 0) {
        r[neg_part[k]] = -src[k];
      } else if (lower[k] != 0.0) {
        rhs -= src[k] * lower[k];
      }
    }
    if (!eq) r[slack0 + (i - n_eq)] = 1.0;
    if (rhs < 0.0) {
      for (int j = 0; j < n_cols; ++j) r[j] = -r[j];
      rhs = -rhs;
      sign[i] = -1.0;
    }
    r[n_cols] = rhs;
    r[art0 + i] = 1.0;
    t.basis[i] = art0 + i;
  }

  LpSolution out;

  // Phase one: minimise the total artificial mass.
  Vec d(n_cols, 0.0);
  for (int i = 0; i < m; ++i) d[art0 + i] = 1.0;
  t.load_costs(d);
  if (!t.optimize(n_cols)) {
    throw std::runtime_error("solve_lp: phase one diverged");
  }
  double b_scale = 1.0;
  for (int i = 0; i < m; ++i) b_scale = std::max(b_scale, std::fabs(t.rhs(i)));
  if (-t.cost[n_cols] > kPhaseOneTol * b_scale) {
    out.status = LpStatus::infeasible;
    return out;
  }
  // Pivot surviving artificials out on their row's strongest real entry.
  // A row with no usable entry is a redundant constraint; its artificial
  // stays basic at zero and, with every real coefficient below the pivot
  // tolerance, can never be chosen to leave again.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < art0) continue;
    int best_col = -1;
    double best_mag = kPivotTol;
    for (int j = 0; j < art0; ++j) {
      const double mag = std::fabs(t.row[i][j]);
      if (mag > best_mag) {
        best_mag = mag;
        best_col = j;
      }
    }
    if (best_col >= 0) t.pivot(i, best_col);
  }

  // Phase two: the real objective, negated for minimisation. Artificial
  // columns are barred from entering.
  d.assign(n_cols, 0.0);
  for (int k = 0; k < n; ++k) {
    d[k] = -lp.objective[k];
    if (neg_part[k] >= 0) d[neg_part[k]] = lp.objective[k];
  }
  t.load_costs(d);
  if (!t.optimize(art0)) {
    out.status = LpStatus::unbounded;
    return out;
  }

  Vec internal(n_cols, 0.0);
  for (int i = 0; i < m; ++i) internal[t.basis[i]] = t.rhs(i);
  out.point.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    out.point[k] = internal[k];
    if (neg_part[k] >= 0) {
      out.point[k] -= internal[neg_part[k]];
    } else {
      out.point[k] += lower[k];
    }
  }
  out.value = dot(lp.objective, out.point);
  // The reduced cost on row i's artificial column is minus that row's dual
  // in the internal minimisation; undoing the sign flips and the max/min
  // switch leaves exactly the artificial-column entry times the row flip.
  out.dual_eq.assign(n_eq, 0.0);
  out.dual_ub.assign(n_ub, 0.0);
  for (int i = 0; i < m; ++i) {
    const double y = sign[i] * t.cost[art0 + i];
    if (i < n_eq) {
      out.dual_eq[i] = y;
    } else {
      out.dual_ub[i - n_eq] = y;
    }
  }
  out.status = LpStatus::optimal;
  verify_optimal(lp, lower, out);
  return out;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

}  // namespace omd
