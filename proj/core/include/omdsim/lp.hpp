#pragma once

#include <limits>
#include <string>
#include <vector>

#include "omdsim/linalg.hpp"

namespace omd {

// A linear program in the form accepted by solve_lp:
//
//   maximize    objective . v
//   subject to  eq_lhs[i] . v == eq_rhs[i]      for each equality row
//               ub_lhs[j] . v <= ub_rhs[j]      for each inequality row
//               v[k] >= var_lower[k]            (use -infinity for a free variable)
//
// Rows are dense. This is meant for the small equilibrium programs that
// show up here (at most a few hundred variables), not as a general solver.
struct LinearProgram {
  Vec objective;
  std::vector<Vec> eq_lhs;
  Vec eq_rhs;
  std::vector<Vec> ub_lhs;
  Vec ub_rhs;
  // Per-variable lower bound; defaults to 0 for every variable when empty.
  // -std::numeric_limits<double>::infinity() marks a free variable.
  Vec var_lower;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vec point;             // primal solution (original variables), valid when optimal
  double value = 0.0;    // objective . point, valid when optimal
  Vec dual_eq;           // dual multipliers for equality rows, valid when optimal
  Vec dual_ub;           // dual multipliers for <= rows (nonnegative), valid when optimal
};

// Two-phase primal simplex with Bland's rule (deterministic, no cycling).
// Free variables are split into positive and negative parts internally;
// finite nonzero lower bounds are shifted out. Phase one minimises the sum
// of artificial variables; if it ends positive the program is infeasible.
LpSolution solve_lp(const LinearProgram& lp);

const char* to_string(LpStatus status);

}  // namespace omd
