#include <cmath>
#include <limits>

#include "doctest.h"
#include "omdsim/lp.hpp"
#include "omdsim/rng.hpp"
#include "oracles.hpp"

using namespace omd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Residual feasibility of a claimed optimal point, checked from the raw
// program data rather than anything the solver reports.
void check_feasible(const LinearProgram& lp, const Vec& v, double tol) {
  for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i)
    CHECK(std::fabs(dot(lp.eq_lhs[i], v) - lp.eq_rhs[i]) <= tol);
  for (std::size_t i = 0; i < lp.ub_lhs.size(); ++i)
    CHECK(dot(lp.ub_lhs[i], v) <= lp.ub_rhs[i] + tol);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double lo = lp.var_lower.empty() ? 0.0 : lp.var_lower[j];
    if (lo != -kInf) CHECK(v[j] >= lo - tol);
  }
}

}  // namespace

TEST_CASE("one variable, one bound") {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.ub_lhs = {{1.0}};
  lp.ub_rhs = {1.0};
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.point[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unbounded and infeasible programs are classified") {
  SUBCASE("unbounded above") {
    LinearProgram lp;
    lp.objective = {1.0};  // maximize x, x >= 0, no ceiling
    CHECK(solve_lp(lp).status == LpStatus::unbounded);
  }
  SUBCASE("contradictory constraints") {
    LinearProgram lp;
    lp.objective = {1.0};
    lp.eq_lhs = {{1.0}};
    lp.eq_rhs = {-2.0};  // x = -2 against x >= 0
    CHECK(solve_lp(lp).status == LpStatus::infeasible);
  }
  SUBCASE("empty inequality intersection") {
    LinearProgram lp;
    lp.objective = {1.0, 0.0};
    lp.ub_lhs = {{1.0, 1.0}, {-1.0, -1.0}};
    lp.ub_rhs = {1.0, -2.0};  // x+y <= 1 and x+y >= 2
    CHECK(solve_lp(lp).status == LpStatus::infeasible);
  }
}

TEST_CASE("free variables and shifted lower bounds") {
  // maximize -x + y with x free, y in [2, 5]: drive x to its equality tie
  // x = y - 4 from the single equation, push y to 5.
  LinearProgram lp;
  lp.objective = {-1.0, 1.0};
  lp.eq_lhs = {{1.0, -1.0}};
  lp.eq_rhs = {-4.0};  // x - y = -4
  lp.ub_lhs = {{0.0, 1.0}};
  lp.ub_rhs = {5.0};
  lp.var_lower = {-kInf, 2.0};
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.point[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.point[1] == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(s.value == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("degenerate pivoting terminates (Beale-style cycling example)") {
  // The classic cycling program for the textbook simplex method; Bland's
  // rule must grind through it to the optimum 0.05 at x = (1/25, 0, 1, 0).
  LinearProgram lp;
  lp.objective = {0.75, -150.0, 0.02, -6.0};
  lp.ub_lhs = {{0.25, -60.0, -0.04, 9.0},
               {0.5, -90.0, -0.02, 3.0},
               {0.0, 0.0, 1.0, 0.0}};
  lp.ub_rhs = {0.0, 0.0, 1.0};
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.value == doctest::Approx(0.05).epsilon(1e-9));
  check_feasible(lp, s.point, 1e-9);
}

TEST_CASE("duals certify optimality on a small program") {
  // max x1 + x2 st x1 + 2 x2 <= 4, 3 x1 + x2 <= 6: strong duality means the
  // dual objective at the reported multipliers equals the primal value.
  LinearProgram lp;
  lp.objective = {1.0, 1.0};
  lp.ub_lhs = {{1.0, 2.0}, {3.0, 1.0}};
  lp.ub_rhs = {4.0, 6.0};
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  REQUIRE(s.dual_ub.size() == 2);
  CHECK(s.dual_ub[0] >= -1e-12);
  CHECK(s.dual_ub[1] >= -1e-12);
  CHECK(s.dual_ub[0] * 4.0 + s.dual_ub[1] * 6.0 ==
        doctest::Approx(s.value).epsilon(1e-9));
  // Dual feasibility: y^T A >= c componentwise.
  for (int j = 0; j < 2; ++j)
    CHECK(s.dual_ub[0] * lp.ub_lhs[0][j] + s.dual_ub[1] * lp.ub_lhs[1][j] >=
          lp.objective[j] - 1e-9);
}

TEST_CASE("solver matches basic-feasible-solution enumeration on random programs") {
  SplitMix64 rng(101);
  int optimal_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + int(rng.next_below(5));  // 2..6 variables
    LinearProgram lp;
    lp.objective.resize(n);
    for (double& c : lp.objective) c = rng.uniform(-1.0, 1.0);
    lp.var_lower.assign(n, 0.0);
    if (rng.next_below(2) == 0) lp.var_lower[rng.next_below(n)] = -kInf;

    // A box row per variable keeps every program bounded; free variables get
    // a lower box too. One optional equality and one optional extra row.
    for (int j = 0; j < n; ++j) {
      Vec row(n, 0.0);
      row[j] = 1.0;
      lp.ub_lhs.push_back(row);
      lp.ub_rhs.push_back(rng.uniform(0.5, 2.0));
      if (lp.var_lower[j] == -kInf) {
        row[j] = -1.0;
        lp.ub_lhs.push_back(row);
        lp.ub_rhs.push_back(rng.uniform(0.5, 2.0));
      }
    }
    if (rng.next_below(2) == 0) {
      Vec row(n);
      for (double& a : row) a = rng.uniform(-1.0, 1.0);
      lp.eq_lhs.push_back(row);
      lp.eq_rhs.push_back(rng.uniform(-0.5, 0.5));
    }
    if (rng.next_below(2) == 0) {
      Vec row(n);
      for (double& a : row) a = rng.uniform(-1.0, 1.0);
      lp.ub_lhs.push_back(row);
      lp.ub_rhs.push_back(rng.uniform(-0.2, 1.0));
    }

    const LpSolution got = solve_lp(lp);
    const oracle::BfsResult want = oracle::enumerate_lp(lp);
    if (want.feasible) {
      ++optimal_seen;
      REQUIRE(got.status == LpStatus::optimal);
      CHECK(got.value == doctest::Approx(want.value).epsilon(1e-7));
      check_feasible(lp, got.point, 1e-7);
      CHECK(dot(lp.objective, got.point) ==
            doctest::Approx(got.value).epsilon(1e-9));
    } else {
      ++infeasible_seen;
      CHECK(got.status == LpStatus::infeasible);
    }
  }
  // The generator must actually exercise both outcomes.
  CHECK(optimal_seen >= 30);
  CHECK(infeasible_seen >= 1);
}

TEST_CASE("solve_lp is deterministic") {
  LinearProgram lp;
  lp.objective = {0.3, -0.7, 0.2};
  lp.ub_lhs = {{1.0, 1.0, 1.0}, {-0.2, 0.5, 0.1}};
  lp.ub_rhs = {1.5, 0.4};
  const LpSolution a = solve_lp(lp);
  const LpSolution b = solve_lp(lp);
  REQUIRE(a.status == b.status);
  for (std::size_t i = 0; i < a.point.size(); ++i)
    CHECK(a.point[i] == b.point[i]);
  CHECK(a.value == b.value);
}

TEST_CASE("status names") {
  CHECK(std::string(to_string(LpStatus::optimal)) == "optimal");
  CHECK(std::string(to_string(LpStatus::infeasible)) == "infeasible");
  CHECK(std::string(to_string(LpStatus::unbounded)) == "unbounded");
}
