#include "omdsim/cce_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace omd {

namespace {

void require_normal_form(const BimatrixGame& game) {
  if (!game.is_normal_form())
    throw std::invalid_argument(
        "CCE programs optimise over joint action distributions; '" +
        game.name() + "' is sequence-form and has no finite joint support");
}

// One variable per action pair, row-major: mu_ij sits at i * cols + j. When
// with_eps is set, one extra free variable (the incentive margin) follows
// the distribution block and every deviation row reads  -slack + eps <= 0.
struct CceProgram {
  LinearProgram lp;
  int nm = 0;
  int eps_col = -1;  // -1 when the program carries no margin variable
};

CceProgram base_program(const BimatrixGame& game, bool with_eps) {
  const Matrix& a = game.a();
  const Matrix& b = game.b();
  const int n = game.rows(), m = game.cols(), nm = n * m;

  CceProgram p;
  p.nm = nm;
  const int n_vars = with_eps ? nm + 1 : nm;
  if (with_eps) p.eps_col = nm;

  // Row player deviating to a': the slack sum_ij mu_ij (A_ij - A_a'j) must
  // stay >= eps, which in <= form is  sum_ij mu_ij (A_a'j - A_ij) + eps <= 0.
  for (int ap = 0; ap < n; ++ap) {
    Vec row(n_vars, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) row[i * m + j] = a(ap, j) - a(i, j);
    if (with_eps) row[p.eps_col] = 1.0;
    p.lp.ub_lhs.push_back(std::move(row));
    p.lp.ub_rhs.push_back(0.0);
  }
  // Column player deviating to b', symmetric in B.
  for (int bp = 0; bp < m; ++bp) {
    Vec row(n_vars, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) row[i * m + j] = b(i, bp) - b(i, j);
    if (with_eps) row[p.eps_col] = 1.0;
    p.lp.ub_lhs.push_back(std::move(row));
    p.lp.ub_rhs.push_back(0.0);
  }

  // mu is a probability distribution; the margin variable is free.
  Vec ones(n_vars, 0.0);
  std::fill(ones.begin(), ones.begin() + nm, 1.0);
  p.lp.eq_lhs.push_back(std::move(ones));
  p.lp.eq_rhs.push_back(1.0);
  p.lp.var_lower.assign(n_vars, 0.0);
  if (with_eps)
    p.lp.var_lower[p.eps_col] = -std::numeric_limits<double>::infinity();

  p.lp.objective.assign(n_vars, 0.0);
  return p;
}

// Every distribution these programs hand back must be a distribution in
// more than name: entrywise >= -1e-10 and total mass 1 within 1e-8. The
// solver certifies its own optimum, so a breach here is an internal bug.
Matrix extract_mu(const Vec& point, int n, int m) {
  Matrix mu(n, m);
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const double v = point[i * m + j];
      if (v < -1e-10)
        throw std::logic_error("CCE solution has negative probability mass");
      mu(i, j) = v;
      total += v;
    }
  if (std::fabs(total - 1.0) > 1e-8)
    throw std::logic_error("CCE solution mass differs from 1");
  return mu;
}

LpSolution solve_or_throw(const LinearProgram& lp, const char* what) {
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error(std::string(what) + " program ended " +
                             to_string(sol.status) +
                             "; it is feasible and bounded by construction");
  return sol;
}

}  // namespace

CceSolution strongest_cce(const BimatrixGame& game) {
  require_normal_form(game);
  // Always solvable: mu ranges over a simplex and eps is capped by every
  // deviation row, so the optimum exists (it is <= 0 for zero-sum games).
  CceProgram p = base_program(game, /*with_eps=*/true);
  p.lp.objective[p.eps_col] = 1.0;
  const LpSolution sol = solve_or_throw(p.lp, "strongest-CCE");
  return {sol.point[p.eps_col],
          extract_mu(sol.point, game.rows(), game.cols())};
}

std::optional<CceSolution> cce_with_utility_pair(const BimatrixGame& game,
                                                 double w_x, double w_y,
                                                 bool at_least) {
  require_normal_form(game);
  CceProgram p = base_program(game, /*with_eps=*/true);
  p.lp.objective[p.eps_col] = 1.0;

  const Matrix& a = game.a();
  const Matrix& b = game.b();
  const int n = game.rows(), m = game.cols();
  Vec row_x(p.nm + 1, 0.0), row_y(p.nm + 1, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      row_x[i * m + j] = a(i, j);
      row_y[i * m + j] = b(i, j);
    }
  if (at_least) {
    // E_mu[u] >= w  becomes  -E_mu[u] <= -w.
    for (double& v : row_x) v = -v;
    for (double& v : row_y) v = -v;
    p.lp.ub_lhs.push_back(std::move(row_x));
    p.lp.ub_rhs.push_back(-w_x);
    p.lp.ub_lhs.push_back(std::move(row_y));
    p.lp.ub_rhs.push_back(-w_y);
  } else {
    p.lp.eq_lhs.push_back(std::move(row_x));
    p.lp.eq_rhs.push_back(w_x);
    p.lp.eq_lhs.push_back(std::move(row_y));
    p.lp.eq_rhs.push_back(w_y);
  }

  LpSolution sol = solve_lp(p.lp);
  // Infeasible means (w_x, w_y) lies outside the achievable payoff region.
  if (sol.status == LpStatus::infeasible) return std::nullopt;
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error(
        "utility-pinned CCE program ended unbounded; the distribution "
        "simplex should cap it");
  return CceSolution{sol.point[p.eps_col],
                     extract_mu(sol.point, game.rows(), game.cols())};
}

WelfareSolution max_welfare_cce(const BimatrixGame& game) {
  require_normal_form(game);
  CceProgram p = base_program(game, /*with_eps=*/false);

  const Matrix& a = game.a();
  const Matrix& b = game.b();
  const int n = game.rows(), m = game.cols();
  WelfareSolution w;
  w.unconstrained_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const double s = a(i, j) + b(i, j);
      p.lp.objective[i * m + j] = s;
      w.unconstrained_max = std::max(w.unconstrained_max, s);
    }

  const LpSolution sol = solve_or_throw(p.lp, "max-welfare CCE");
  w.welfare = sol.value;
  w.mu = extract_mu(sol.point, n, m);
  return w;
}

}  // namespace omd
