#include "omdsim/dynamics.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "omdsim/rng.hpp"

namespace omd {

namespace {

Vec shifted(const Vec& base, const Vec& dir, double scale) {
  Vec z = base;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += scale * dir[i];
  return z;
}

Vec initial_point(const StrategyPolytope& p, const RunConfig& cfg, bool is_x,
                  SplitMix64& rng, const Regularizer* reg) {
  switch (cfg.init_mode) {
    case InitMode::regularizer_min:
      return reg ? reg->minimizer(p, cfg.projection_tol) : regularizer_min(p);
    case InitMode::deterministic_vertex:
      return vertex_point(p, is_x ? cfg.vertex_index_x : cfg.vertex_index_y);
    case InitMode::seeded_random:
      return random_point(p, rng);
  }
  throw std::logic_error("unreachable init mode");
}

void validate(const RunConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw std::invalid_argument("run: eta must be positive");
  if (cfg.horizon < 1) throw std::invalid_argument("run: horizon must be >= 1");
  if (!(cfg.projection_tol > 0.0))
    throw std::invalid_argument("run: projection_tol must be positive");
}

void warn_if_unnormalized(const BimatrixGame& game) {
  const NormalizationReport rep = normalization_report(game);
  const double worst = std::max(rep.scale_a, rep.scale_b);
  if (worst > 1.0 + 1e-6) {
    std::cerr << "warning: game '" << game.name()
              << "' is not normalized (utility norm bound " << worst
              << "); stability bounds scale accordingly\n";
  }
}

// Shared driver. When regularizers are supplied the prox steps go through
// them; otherwise the steps are plain Euclidean projections (the same thing
// the unit quadratic regularizer computes, kept separate to avoid virtual
// dispatch in the hot loop).
Trace drive(const BimatrixGame& game, const RunConfig& cfg,
            const Regularizer* reg_x, const Regularizer* reg_y) {
  validate(cfg);
  warn_if_unnormalized(game);

  const StrategyPolytope& px = game.polytope_x();
  const StrategyPolytope& py = game.polytope_y();
  const double tol = cfg.projection_tol;
  const double eta = cfg.eta;

  // One mirror step from `anchor` along eta·u.
  auto prox_x = [&](const Vec& anchor, const Vec& u) {
    if (!reg_x) return project(px, shifted(anchor, u, eta), tol);
    Vec g(u.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = eta * u[i];
    return reg_x->prox(anchor, g, px, tol);
  };
  auto prox_y = [&](const Vec& anchor, const Vec& u) {
    if (!reg_y) return project(py, shifted(anchor, u, eta), tol);
    Vec g(u.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = eta * u[i];
    return reg_y->prox(anchor, g, py, tol);
  };

  SplitMix64 rng(cfg.seed);
  PlayerState sx, sy;
  sx.x_hat = initial_point(px, cfg, true, rng, reg_x);
  sy.x_hat = initial_point(py, cfg, false, rng, reg_y);
  sx.x = sx.x_hat;
  sy.x = sy.x_hat;
  // Warm-up: the prediction for t = 1 is the utility at the t = 0 strategies.
  sx.last_u = game.utility_x(sy.x);
  sy.last_u = game.utility_y(sx.x);
  sx.m = sx.last_u;
  sy.m = sy.last_u;

  Trace tr;
  tr.config = cfg;
  tr.game_name = game.name();
  tr.normal_form = game.is_normal_form();
  const int T = cfg.horizon;
  tr.x.reserve(T + 1);
  tr.y.reserve(T + 1);
  tr.x.push_back(sx.x);
  tr.y.push_back(sy.x);
  if (cfg.record_secondary) {
    tr.x_hat.reserve(T + 1);
    tr.y_hat.reserve(T + 1);
    tr.x_hat.push_back(sx.x_hat);
    tr.y_hat.push_back(sy.x_hat);
  }
  auto zeros = [T] { Vec v; v.reserve(T + 1); v.push_back(0.0); return v; };
  tr.step_norm_x = zeros();
  tr.step_norm_y = zeros();
  tr.prox_primary_x = zeros();
  tr.prox_primary_y = zeros();
  tr.prox_secondary_x = zeros();
  tr.prox_secondary_y = zeros();
  tr.hat_step_x = zeros();
  tr.hat_step_y = zeros();

  for (int t = 1; t <= T; ++t) {
    // Both primary steps react to time t-1 information only.
    Vec x_new = prox_x(sx.x_hat, sx.m);
    Vec y_new = prox_y(sy.x_hat, sy.m);
    // Only now do the utilities at time t exist.
    Vec u_x = game.utility_x(y_new);
    Vec u_y = game.utility_y(x_new);
    Vec x_hat_new = prox_x(sx.x_hat, u_x);
    Vec y_hat_new = prox_y(sy.x_hat, u_y);

    tr.step_norm_x.push_back(std::sqrt(distance2(x_new, sx.x)));
    tr.step_norm_y.push_back(std::sqrt(distance2(y_new, sy.x)));
    tr.prox_primary_x.push_back(std::sqrt(distance2(x_new, sx.x_hat)));
    tr.prox_primary_y.push_back(std::sqrt(distance2(y_new, sy.x_hat)));
    tr.prox_secondary_x.push_back(std::sqrt(distance2(x_hat_new, x_new)));
    tr.prox_secondary_y.push_back(std::sqrt(distance2(y_hat_new, y_new)));
    tr.hat_step_x.push_back(std::sqrt(distance2(x_hat_new, sx.x_hat)));
    tr.hat_step_y.push_back(std::sqrt(distance2(y_hat_new, sy.x_hat)));

    sx.x = std::move(x_new);
    sy.x = std::move(y_new);
    sx.x_hat = std::move(x_hat_new);
    sy.x_hat = std::move(y_hat_new);
    sx.last_u = std::move(u_x);
    sy.last_u = std::move(u_y);
    sx.m = sx.last_u;
    sy.m = sy.last_u;

    tr.x.push_back(sx.x);
    tr.y.push_back(sy.x);
    if (cfg.record_secondary) {
      tr.x_hat.push_back(sx.x_hat);
      tr.y_hat.push_back(sy.x_hat);
    }
  }
  return tr;
}

}  // namespace

Vec ogd_primary_step(const PlayerState& s, double eta, const StrategyPolytope& p,
                     double tol) {
  return project(p, shifted(s.x_hat, s.m, eta), tol);
}

void ogd_secondary_step(PlayerState& s, const Vec& u_new, double eta,
                        const StrategyPolytope& p, double tol) {
  s.x_hat = project(p, shifted(s.x_hat, u_new, eta), tol);
  s.last_u = u_new;
  s.m = u_new;
}

PlayerState ogd_player_step(const PlayerState& s, const Vec& u_new, double eta,
                            const StrategyPolytope& p, double tol) {
  if (u_new.size() != s.x_hat.size())
    throw std::invalid_argument("ogd_player_step: utility dimension mismatch");
  PlayerState next = s;
  next.x = ogd_primary_step(s, eta, p, tol);
  ogd_secondary_step(next, u_new, eta, p, tol);
  return next;
}

Trace run(const BimatrixGame& game, const RunConfig& cfg) {
  return drive(game, cfg, nullptr, nullptr);
}

Trace run_omd_generic(const BimatrixGame& game, const RunConfig& cfg,
                      const Regularizer& reg_x, const Regularizer& reg_y) {
  return drive(game, cfg, &reg_x, &reg_y);
}

Trace run_omd_generic(const BimatrixGame& game, const RunConfig& cfg,
                      const Regularizer& reg) {
  return drive(game, cfg, &reg, &reg);
}

}  // namespace omd
