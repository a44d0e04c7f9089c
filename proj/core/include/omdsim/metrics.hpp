// Trajectory functionals over recorded runs: regret, equilibrium gaps, path
// lengths, the trajectory inequality checkers (regret-variation bound,
// stability, balanced movement), approximate-fixed-point detection, and the
// negative-regret theorem's threshold arithmetic.
#pragma once

#include <optional>
#include <string>

#include "omdsim/dynamics.hpp"
#include "omdsim/game.hpp"

namespace omd {

// Cumulative external regret of each player, indexed t = 0..T with the
// t = 0 warm-up excluded (entry 0 is zero): reg[t] compares the best fixed
// vertex in hindsight against the realized utility over steps 1..t.
struct RegretSeries {
  Vec reg_x, reg_y;
};

// Running movement sums, indexed t = 0..T with zero at t = 0.
// sigma_* is the second-order path length
//   Σ_{s<=t} (‖x(s) − x̂(s)‖² + ‖x(s) − x̂(s−1)‖²),
// primary_diff_* is Σ_{s<=t} ‖x(s) − x(s−1)‖².
struct PathLengths {
  Vec sigma_x, sigma_y;
  Vec primary_diff_x, primary_diff_y;
};

// Equilibrium quality of a finished run. cce_gap is max(final regret)/T —
// the average correlated play is an ε-CCE for ε = cce_gap, and a strong CCE
// by margin strong_eps when the gap is negative. For normal-form traces the
// gap is cross-checked against the direct deviation evaluation on the
// average correlated play (cce_gap_mu); the two agree to float accuracy.
struct GapReport {
  double nash_gap_last = 0.0;
  int nash_gap_min_t = 0;
  double nash_gap_min = 0.0;
  double cce_gap = 0.0;
  double strong_eps = 0.0;
  double welfare_avg = 0.0;
  double avg_utility_x = 0.0;    // (1/T) Σ x(t)' A y(t)
  double avg_utility_y = 0.0;
  double best_deviation_x = 0.0; // value of the best fixed deviation vs play
  double best_deviation_y = 0.0;
  std::optional<double> cce_gap_mu;  // deviation-based gap (normal form only)
};

// Outcome of checking one trajectory inequality over every prefix.
// violated uses a relative tolerance: slack < -1e-7 · scale at any prefix,
// where scale = max(1, |lhs|, |rhs|) of that prefix.
struct InequalityReport {
  std::string name;
  double worst_slack = 0.0;  // min over prefixes of (bound side − bounded side)
  int worst_t = -1;
  double scale = 1.0;        // scale at the worst prefix
  bool violated = false;
};

// An approximate fixed point of the dynamics and its equilibrium
// certificate. The certificate uses the polytope diameters; the variant
// with max-norm constants is recorded alongside. verified_nash_gap is the
// independently evaluated gap at the detected iterate.
struct NeDetection {
  int t = 0;
  double certified_bound = 0.0;           // 2εG·max{D_X, D_Y} + εη
  double certified_bound_norm_max = 0.0;  // 2εG·max{Ω_X, Ω_Y} + εη
  double verified_nash_gap = 0.0;
  bool certificate_ok = false;  // verified_nash_gap <= certified_bound + 1e-9
};

// The negative-regret theorem's parameter thresholds for a given game and
// ε. t_min, predicted_regret_bound, and the quality bounds are evaluated at
// η = eta_max (the least demanding admissible learning rate).
struct TheoremThresholds {
  double eta_max = 0.0;
  double t_min = 0.0;
  double predicted_regret_bound = 0.0;  // −min{ε²η/32, ε⁴η/(2048·…)}·t_min
  double ne_quality = 0.0;              // 2εG·max{D_X, D_Y} + ε·eta_max
  double ne_quality_nfg = 0.0;          // ε·(3 + eta_max), simplex shortcut
};

// Which horn of the equilibrium-or-negative-regret dichotomy a run lands
// on. At practical learning rates the theorem's thresholds are far out of
// reach, so the horns are reported empirically; strict assertion of the
// regret bound applies only to theorem-compliant parameters.
struct DichotomyReport {
  TheoremThresholds thresholds;
  double eta_used = 0.0;
  int horizon_used = 0;
  double t_min_at_eta = 0.0;  // the horizon the theorem demands at eta_used
  bool theorem_compliant = false;
  double predicted_regret_bound = 0.0;  // at (eta_used, horizon_used)
  std::optional<NeDetection> detection;
  double final_regret_x = 0.0;
  double final_regret_y = 0.0;
  std::string observed_horn;  // approximate-equilibrium | negative-regret | both | neither
  std::string note;
};

// Cumulative regrets of both players (t = 0 excluded per the regret
// definition); utilities are recomputed from the game, so the trace only
// needs primary iterates.
RegretSeries regret(const Trace& trace, const BimatrixGame& game);

// max over both players of (best-response value − realized value); zero
// exactly at Nash equilibria, and invariant under per-player constant
// payoff shifts. Throws on infeasible points.
double nash_gap(const BimatrixGame& game, const Vec& x, const Vec& y);

// μ̄ = (1/T) Σ_{t=1..T} x(t) y(t)', the average correlated distribution of
// play. Normal-form traces only; sequence-form traces throw (use the
// regret-based gap of cce_report instead).
Matrix avg_correlated_play(const Trace& trace);

GapReport cce_report(const Trace& trace, const BimatrixGame& game);

PathLengths path_lengths(const Trace& trace);

// Per player and per prefix: regret ≤ Ω_R/η + η‖M‖²·Σ‖opponent steps‖²
// − (1/4η)·Σ_player, with M = A for X and B for Y.
InequalityReport check_rvu(const Trace& trace, const BimatrixGame& game);

// Per step: ‖x(t) − x(t−1)‖ ≤ 3η·s plus the proof's intermediate bounds
// ‖x(t) − x̂(t−1)‖ ≤ η·s and ‖x̂(t) − x̂(t−1)‖ ≤ η·s, where s is the
// utility-norm scale (1 for normalized games).
InequalityReport check_stability(const Trace& trace, double eta,
                                 double utility_scale = 1.0);

// Per prefix, both directions: Σ‖y(t) − y(t−1)‖ ≥ Σ_X/(2η·Ω_X·‖A‖) − 2/‖A‖
// and symmetrically. Throws if either payoff matrix is zero.
InequalityReport check_balanced(const Trace& trace, const BimatrixGame& game);

// First t at which all four prox distances ‖x(t) − x̂(t−1)‖, ‖x̂(t) − x(t)‖,
// ‖y(t) − ŷ(t−1)‖, ‖ŷ(t) − y(t)‖ fall to ε·η; empty if never. The returned
// certificate is independently verified against the actual Nash gap.
std::optional<NeDetection> detect_ne(const Trace& trace, const BimatrixGame& game,
                                     double eps, double eta, double smoothness_g,
                                     const PolytopeConstants& constants_x,
                                     const PolytopeConstants& constants_y);

TheoremThresholds theorem_thresholds(const BimatrixGame& game, double eps,
                                     double smoothness_g = 1.0);

DichotomyReport check_dichotomy(const Trace& trace, const BimatrixGame& game,
                                double eps);

}  // namespace omd
