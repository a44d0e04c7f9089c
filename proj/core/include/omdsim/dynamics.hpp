// The two-player optimistic gradient engine: both players run mirror descent
// with one-recency-bias predictions and a constant learning rate, stepping
// simultaneously against each other's primary iterates.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omdsim/game.hpp"
#include "omdsim/linalg.hpp"
#include "omdsim/polytope.hpp"
#include "omdsim/regularizer.hpp"

namespace omd {

enum class InitMode {
  regularizer_min,      // start at the regularizer's minimizer (uniform play)
  deterministic_vertex, // start each player at a fixed pure strategy
  seeded_random,        // start at a seeded random feasible point
};

struct RunConfig {
  double eta = 0.1;
  int horizon = 1000;
  InitMode init_mode = InitMode::regularizer_min;
  int vertex_index_x = 0;  // used by deterministic_vertex
  int vertex_index_y = 0;
  std::uint64_t seed = 0;  // used by seeded_random
  bool record_secondary = false;
  double projection_tol = 1e-10;
};

// One player's rolling state. `m` is the prediction fed into the primary
// step; under one-recency bias it always equals `last_u`, kept separate so
// the two roles stay readable.
struct PlayerState {
  Vec x_hat;   // secondary iterate
  Vec x;       // primary iterate
  Vec m;       // prediction for the upcoming step
  Vec last_u;  // utility observed at the previous step
};

// Full record of a run. Primary iterates are always kept; secondary
// iterates only when the config asks (metrics that need them use the
// per-step distances below, which are always recorded). Index t runs
// 0..horizon, with the t = 0 entries of the distance series set to zero.
struct Trace {
  RunConfig config;
  std::string game_name;
  bool normal_form = true;  // both polytopes simplices at record time

  std::vector<Vec> x, y;          // primary iterates
  std::vector<Vec> x_hat, y_hat;  // secondary iterates (record_secondary only)

  Vec step_norm_x, step_norm_y;            // ||x(t) - x(t-1)||
  Vec prox_primary_x, prox_primary_y;      // ||x(t) - x_hat(t-1)||
  Vec prox_secondary_x, prox_secondary_y;  // ||x_hat(t) - x(t)||
  Vec hat_step_x, hat_step_y;              // ||x_hat(t) - x_hat(t-1)||

  int horizon() const { return static_cast<int>(x.size()) - 1; }
};

// The primary half-step: x(t) = prox from x_hat(t-1) along eta·m. Exposed
// separately because the engine must advance both players' primaries before
// either utility for the secondary step exists.
Vec ogd_primary_step(const PlayerState& s, double eta, const StrategyPolytope& p,
                     double tol);

// The secondary half-step: x_hat(t) = prox from x_hat(t-1) along eta·u_new;
// updates m and last_u for the next round.
void ogd_secondary_step(PlayerState& s, const Vec& u_new, double eta,
                        const StrategyPolytope& p, double tol);

// Both half-steps of a single player, given the utility that the opponent's
// simultaneous primary step produced.
PlayerState ogd_player_step(const PlayerState& s, const Vec& u_new, double eta,
                            const StrategyPolytope& p, double tol);

// Runs the Euclidean dynamics: x_hat(0) per init_mode, x(0) = x_hat(0), the
// warm-up utility is taken at the t = 0 strategies, then horizon rounds of
// simultaneous optimistic steps. Deterministic for a fixed config. Warns on
// stderr when the game's utilities are not normalized (the stability bounds
// scale with the utility norm).
Trace run(const BimatrixGame& game, const RunConfig& cfg);

// Same protocol with the mirror steps delegated to arbitrary regularizers
// (one per player; the single-regularizer form uses it for both). With the
// Euclidean regularizer this reproduces run() exactly.
Trace run_omd_generic(const BimatrixGame& game, const RunConfig& cfg,
                      const Regularizer& reg_x, const Regularizer& reg_y);
Trace run_omd_generic(const BimatrixGame& game, const RunConfig& cfg,
                      const Regularizer& reg);

}  // namespace omd
