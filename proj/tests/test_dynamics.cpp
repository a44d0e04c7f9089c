#include <cmath>

#include "doctest.h"
#include "omdsim/dynamics.hpp"
#include "omdsim/game.hpp"
#include "omdsim/polytope.hpp"
#include "omdsim/regularizer.hpp"
#include "omdsim/rng.hpp"

using namespace omd;

namespace {

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

bool traces_identical(const Trace& a, const Trace& b) {
  if (a.x.size() != b.x.size()) return false;
  for (std::size_t t = 0; t < a.x.size(); ++t)
    for (std::size_t i = 0; i < a.x[t].size(); ++i)
      if (a.x[t][i] != b.x[t][i] || a.y[t][i] != b.y[t][i]) return false;
  return true;
}

}  // namespace

TEST_CASE("first optimistic step on the normalized example, by hand") {
  // From uniform play, X's warm-up utility is A y0 with A scaled by sqrt 2:
  // u0 = (1/(3 sqrt 2), 0, 1/(3 sqrt 2)). The first primary step projects
  // uniform + eta u0 back onto the simplex, which for an interior point just
  // recenters: x1 = uniform + eta (u0 - mean(u0)). Y's utility is uniform
  // (every column of B holds a single 1), so y1 stays put.
  const BimatrixGame g = normalize(example_game()).first;
  RunConfig cfg;
  cfg.eta = 0.1;
  cfg.horizon = 1;
  const Trace tr = run(g, cfg);

  const double bump = 0.1 / (9.0 * std::sqrt(2.0));  // eta*(u0_i - mean)/...
  const Vec want_x{1.0 / 3 + bump, 1.0 / 3 - 2.0 * bump, 1.0 / 3 + bump};
  REQUIRE(tr.x.size() == 2);
  for (int i = 0; i < 3; ++i) {
    CHECK(tr.x[1][i] == doctest::Approx(want_x[i]).epsilon(1e-12));
    CHECK(tr.y[1][i] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
  CHECK(tr.horizon() == 1);
  // t = 0 distance entries are zero by convention, and x0 = x_hat0.
  CHECK(tr.step_norm_x[0] == 0.0);
  CHECK(tr.prox_primary_x[0] == 0.0);
}

TEST_CASE("a zero-utility player is a fixed point of both half-steps") {
  const StrategyPolytope p = Simplex{3};
  PlayerState s;
  s.x_hat = s.x = regularizer_min(p);
  s.m = s.last_u = Vec(3, 0.0);
  const PlayerState next = ogd_player_step(s, Vec(3, 0.0), 0.5, p, 1e-10);
  CHECK(dist(next.x, s.x) < 1e-15);
  CHECK(dist(next.x_hat, s.x_hat) < 1e-15);
}

TEST_CASE("interior primary step is an exact gradient step") {
  // With a prediction small enough to stay interior, projection only
  // recenters; starting from uniform the step is eta times the centered
  // prediction.
  const StrategyPolytope p = Simplex{3};
  PlayerState s;
  s.x_hat = s.x = Vec{1.0 / 3, 1.0 / 3, 1.0 / 3};
  s.m = Vec{0.3, 0.0, -0.3};
  s.last_u = s.m;
  const Vec x = ogd_primary_step(s, 0.1, p, 1e-10);
  CHECK(x[0] == doctest::Approx(1.0 / 3 + 0.03).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(x[2] == doctest::Approx(1.0 / 3 - 0.03).epsilon(1e-12));
}

TEST_CASE("iterates stay feasible for every init mode") {
  const BimatrixGame g = random_game(4, 5, 7);
  for (const InitMode mode : {InitMode::regularizer_min,
                              InitMode::deterministic_vertex,
                              InitMode::seeded_random}) {
    RunConfig cfg;
    cfg.eta = 0.2;
    cfg.horizon = 40;
    cfg.init_mode = mode;
    cfg.vertex_index_x = 2;
    cfg.vertex_index_y = 3;
    cfg.seed = 11;
    const Trace tr = run(g, cfg);
    REQUIRE(tr.horizon() == 40);
    for (int t = 0; t <= 40; ++t) {
      CHECK(is_feasible(g.polytope_x(), tr.x[t]));
      CHECK(is_feasible(g.polytope_y(), tr.y[t]));
    }
  }
}

TEST_CASE("runs are bitwise deterministic") {
  const BimatrixGame g = random_game(3, 3, 21);
  RunConfig cfg;
  cfg.eta = 0.05;
  cfg.horizon = 100;
  cfg.init_mode = InitMode::seeded_random;
  cfg.seed = 5;
  CHECK(traces_identical(run(g, cfg), run(g, cfg)));
}

TEST_CASE("generic engine with the Euclidean regularizer reproduces run()") {
  const BimatrixGame g = random_game(4, 4, 31);
  RunConfig cfg;
  cfg.eta = 0.1;
  cfg.horizon = 50;
  const Trace base = run(g, cfg);
  const Trace generic = run_omd_generic(g, cfg, QuadraticRegularizer{});
  REQUIRE(generic.horizon() == base.horizon());
  for (int t = 0; t <= 50; ++t) {
    CHECK(dist(base.x[t], generic.x[t]) < 1e-9);
    CHECK(dist(base.y[t], generic.y[t]) < 1e-9);
  }
}

TEST_CASE("quadratic regularizer centered at c starts there") {
  const BimatrixGame g = example_game();
  const Vec center{0.2, 0.3, 0.5};
  RunConfig cfg;
  cfg.horizon = 1;
  const Trace tr = run_omd_generic(g, cfg, QuadraticRegularizer{1.0, center});
  for (int i = 0; i < 3; ++i)
    CHECK(tr.x[0][i] == doctest::Approx(center[i]).epsilon(1e-10));
}

TEST_CASE("scaling the regularizer is the same as shrinking eta") {
  // alpha-strongly-convex quadratic divides the step by alpha, so running
  // with (eta, alpha) must equal running with (eta / alpha, 1).
  const BimatrixGame g = random_game(3, 4, 17);
  const double alpha = 2.5;
  RunConfig scaled;
  scaled.eta = 0.1;
  scaled.horizon = 20;
  RunConfig shrunk = scaled;
  shrunk.eta = scaled.eta / alpha;
  const Trace a = run_omd_generic(g, scaled, QuadraticRegularizer{alpha});
  const Trace b = run(g, shrunk);
  for (int t = 0; t <= 20; ++t) {
    CHECK(dist(a.x[t], b.x[t]) < 1e-9);
    CHECK(dist(a.y[t], b.y[t]) < 1e-9);
  }
}

TEST_CASE("record_secondary keeps the hat iterates") {
  const BimatrixGame g = example_game();
  RunConfig cfg;
  cfg.horizon = 5;
  cfg.record_secondary = true;
  const Trace tr = run(g, cfg);
  REQUIRE(tr.x_hat.size() == 6);
  // The recorded distances must match the recorded iterates.
  for (int t = 1; t <= 5; ++t) {
    CHECK(tr.prox_secondary_x[t] ==
          doctest::Approx(dist(tr.x_hat[t], tr.x[t])).epsilon(1e-12));
    CHECK(tr.hat_step_x[t] ==
          doctest::Approx(dist(tr.x_hat[t], tr.x_hat[t - 1])).epsilon(1e-12));
  }
}

TEST_CASE("horizon one produces the full trace shape") {
  const BimatrixGame g = example_game();
  RunConfig cfg;
  cfg.horizon = 1;
  const Trace tr = run(g, cfg);
  CHECK(tr.x.size() == 2);
  CHECK(tr.step_norm_x.size() == 2);
  CHECK(tr.prox_primary_y.size() == 2);
  CHECK(tr.hat_step_y.size() == 2);
  CHECK(tr.game_name == "example-3x3");
  CHECK(tr.normal_form);
}
