#pragma once

#include <optional>

#include "omdsim/game.hpp"
#include "omdsim/lp.hpp"

namespace omd {

// Exact coarse-correlated-equilibrium computations for normal-form games,
// phrased as small dense linear programs over the joint distribution mu
// (one variable per action pair). All of them reject sequence-form games:
// a joint distribution over sequence-form strategy profiles has no finite
// parameterisation, so there is nothing for the LP to optimise over.
//
// The incentive constraint for the row player deviating to action a' is
//
//   sum_ij mu_ij * (A_ij - A_a'j)  >=  eps,
//
// i.e. the expected loss from switching every recommendation to a' is at
// least eps; eps = 0 is the ordinary CCE condition, eps > 0 makes the
// equilibrium strict by that margin ("strong" CCE). Column-player rows are
// symmetric in B. Utilities are taken exactly as stored in the game; callers
// who want the normalized landscape normalize the game first.

struct CceSolution {
  double eps_star = 0.0;  // largest margin eps attainable (negative if even
                          // plain CCE feasibility requires slack)
  Matrix mu;              // maximising joint distribution, rows = X actions
};

struct WelfareSolution {
  double welfare = 0.0;          // max E_mu[u_X + u_Y] over CCE distributions
  Matrix mu;                     // welfare-maximising CCE
  double unconstrained_max = 0.0;  // max entry of A + B, for comparison: the
                                   // welfare any distribution could reach if
                                   // incentive constraints were dropped
};

// Maximises the incentive margin eps over all joint distributions. Every
// normal-form game admits eps >= some finite value (mu is a simplex, so the
// program is always feasible and bounded); zero-sum games top out at exactly
// eps = 0, and eps_star > 0 certifies that strictly-enforced ("strong") CCEs
// exist. A 1x1 game has a single vacuous deviation, giving eps_star = 0.
CceSolution strongest_cce(const BimatrixGame& game);

// Largest eps attainable among CCEs pinned to expected utilities
// E_mu[u_X] = w_x and E_mu[u_Y] = w_y (or >= when at_least is set).
// Returns nullopt when no joint distribution meets the utility constraints
// at all, i.e. the point lies outside the achievable payoff region.
std::optional<CceSolution> cce_with_utility_pair(const BimatrixGame& game,
                                                 double w_x, double w_y,
                                                 bool at_least = false);

// Maximises expected welfare E_mu[u_X + u_Y] subject to the plain CCE
// constraints (eps = 0). The gap between `welfare` and `unconstrained_max`
// is the price the incentive constraints extract from this game.
WelfareSolution max_welfare_cce(const BimatrixGame& game);

}  // namespace omd
