#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "omdsim/polytope.hpp"
#include "omdsim/rng.hpp"
#include "oracles.hpp"

using namespace omd;

namespace {

Vec random_vec(SplitMix64& rng, int dim, double lo, double hi) {
  Vec v(dim);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Three-level test treeplex, 9 sequences in topological order:
//   infoset 0 (root): z1 + z2 = z0
//   infoset 1 (after seq 1): z3 + z4 = z1
//   infoset 2 (after seq 2): z5 + z6 + z7 = z2
//   infoset 3 (after seq 3): z8 = z3    (singleton, forced move)
Treeplex deep_treeplex() {
  return Treeplex(9, {{0, 1, 3}, {1, 3, 5}, {2, 5, 8}, {3, 8, 9}});
}

}  // namespace

TEST_CASE("simplex projection matches the grid-search oracle") {
  SplitMix64 rng(11);
  for (int c = 0; c < 100; ++c) {
    const Vec v = random_vec(rng, 3, -2.0, 2.0);
    const Vec got = project_simplex(v);
    const Vec want = oracle::grid_project_simplex3(v);
    CHECK(dist(got, want) < 1e-6);
  }
}

TEST_CASE("simplex projection basics") {
  SUBCASE("feasible points are fixed") {
    const Vec p{0.2, 0.5, 0.3};
    const Vec q = project_simplex(p);
    for (int i = 0; i < 3; ++i) CHECK(q[i] == doctest::Approx(p[i]).epsilon(1e-12));
  }
  SUBCASE("all coordinates large collapses to the max corner direction") {
    const Vec q = project_simplex({10.0, 0.0, 0.0});
    CHECK(q[0] == doctest::Approx(1.0));
    CHECK(q[1] == doctest::Approx(0.0));
    CHECK(q[2] == doctest::Approx(0.0));
  }
  SUBCASE("uniform shift is removed exactly") {
    // Projection onto {sum = 1} is invariant to adding c to all coordinates.
    const Vec a = project_simplex({0.3, -0.1, 0.4});
    const Vec b = project_simplex({1.3, 0.9, 1.4});
    CHECK(dist(a, b) < 1e-12);
  }
  SUBCASE("output is exactly nonnegative and sums to one") {
    SplitMix64 rng(5);
    for (int c = 0; c < 200; ++c) {
      const Vec q = project_simplex(random_vec(rng, 6, -3.0, 3.0));
      double sum = 0.0;
      for (double x : q) {
        CHECK(x >= 0.0);
        sum += x;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("projection is idempotent and nonexpansive") {
  SplitMix64 rng(17);
  const StrategyPolytope simplex = Simplex{4};
  const StrategyPolytope tp = oracle::two_infoset_treeplex();
  for (const StrategyPolytope& p : {simplex, tp}) {
    const int dim = polytope_dim(p);
    for (int c = 0; c < 50; ++c) {
      const Vec v = random_vec(rng, dim, -2.0, 2.0);
      const Vec w = random_vec(rng, dim, -2.0, 2.0);
      const Vec pv = project(p, v);
      const Vec pw = project(p, w);
      CHECK(dist(project(p, pv), pv) < 1e-8);   // idempotent
      CHECK(dist(pv, pw) <= dist(v, w) + 1e-9); // nonexpansive
    }
  }
}

TEST_CASE("treeplex projection matches the parameterized-minimization oracle") {
  const Treeplex tp = oracle::two_infoset_treeplex();
  SplitMix64 rng(23);
  for (int c = 0; c < 50; ++c) {
    const Vec v = random_vec(rng, 5, -2.0, 2.0);
    const Vec got = project_treeplex(tp, v);
    const Vec want = oracle::grid_project_treeplex2(v);
    CHECK(dist(got, want) < 1e-5);
  }
}

TEST_CASE("treeplex projection satisfies the variational inequality") {
  // z* is the projection of v iff <z - z*, v - z*> <= 0 for all feasible z;
  // allow tol * ||v|| of slack for the iterative solver.
  const Treeplex tp = oracle::two_infoset_treeplex();
  SplitMix64 rng(29);
  const StrategyPolytope p = tp;
  for (int c = 0; c < 10; ++c) {
    const Vec v = random_vec(rng, 5, -2.0, 2.0);
    const Vec z_star = project_treeplex(tp, v);
    double vnorm = std::sqrt(dot(v, v));
    for (int k = 0; k < 1000; ++k) {
      const Vec z = random_point(p, rng);
      double inner = 0.0;
      for (int i = 0; i < 5; ++i)
        inner += (z[i] - z_star[i]) * (v[i] - z_star[i]);
      CHECK(inner <= 1e-6 * std::max(1.0, vnorm));
    }
  }
}

TEST_CASE("treeplex with a single root infoset behaves like the simplex") {
  const Treeplex tp(5, {{0, 1, 5}});
  SplitMix64 rng(31);
  for (int c = 0; c < 50; ++c) {
    const Vec v = random_vec(rng, 5, -2.0, 2.0);
    const Vec z = project_treeplex(tp, v);
    const Vec q = project_simplex({v[1], v[2], v[3], v[4]});
    CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-10));
    for (int i = 0; i < 4; ++i)
      CHECK(z[i + 1] == doctest::Approx(q[i]).epsilon(1e-8));
  }
}

TEST_CASE("treeplex projection fixes feasible points") {
  const Treeplex tp = deep_treeplex();
  SplitMix64 rng(37);
  const StrategyPolytope p = tp;
  for (int c = 0; c < 20; ++c) {
    const Vec z = random_point(p, rng);
    CHECK(dist(project_treeplex(tp, z), z) < 1e-8);
    CHECK(is_feasible(p, z));
  }
}

TEST_CASE("project_affine lands on the affine set orthogonally") {
  // P(v) must satisfy the flow equations exactly, and the residual v - P(v)
  // must be orthogonal to every direction of the affine set — vectors d with
  // d0 = 0 whose child sums match their parents.
  const Treeplex tp = deep_treeplex();
  SplitMix64 rng(41);
  const auto& infosets = tp.infosets();
  for (int c = 0; c < 20; ++c) {
    const Vec v = random_vec(rng, 9, -2.0, 2.0);
    const Vec z = tp.project_affine(v);
    CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-10));
    for (const auto& is : infosets) {
      double sum = 0.0;
      for (int s = is.child_begin; s < is.child_end; ++s) sum += z[s];
      CHECK(sum == doctest::Approx(z[is.parent_sequence]).epsilon(1e-10));
    }
    // Idempotence on the affine set.
    CHECK(dist(tp.project_affine(z), z) < 1e-9);
    for (int trial = 0; trial < 50; ++trial) {
      Vec d(9, 0.0);
      for (const auto& is : infosets) {
        // Children drawn at random, then shifted to conserve the parent flow.
        const int width = is.child_end - is.child_begin;
        double sum = 0.0;
        for (int s = is.child_begin; s < is.child_end; ++s) {
          d[s] = rng.uniform(-1.0, 1.0);
          sum += d[s];
        }
        const double fix = (sum - d[is.parent_sequence]) / width;
        for (int s = is.child_begin; s < is.child_end; ++s) d[s] -= fix;
      }
      double inner = 0.0;
      for (int i = 0; i < 9; ++i) inner += (v[i] - z[i]) * d[i];
      CHECK(std::fabs(inner) < 1e-9);
    }
  }
}

TEST_CASE("best_vertex matches exhaustive strategy enumeration") {
  SplitMix64 rng(43);
  for (const Treeplex& tp : {oracle::two_infoset_treeplex(), deep_treeplex()}) {
    const StrategyPolytope p = tp;
    for (int c = 0; c < 100; ++c) {
      const Vec u = random_vec(rng, tp.num_sequences(), -2.0, 2.0);
      const auto [z, val] = best_vertex(p, u);
      const auto [ze, vale] = oracle::enumerate_best_vertex(tp, u);
      CHECK(val == doctest::Approx(vale).epsilon(1e-12));
      CHECK(dot(z, u) == doctest::Approx(vale).epsilon(1e-12));
    }
  }
}

TEST_CASE("best_vertex on the simplex picks the max coordinate, ties low") {
  const StrategyPolytope p = Simplex{4};
  const auto [z, val] = best_vertex(p, {0.5, 2.0, 2.0, -1.0});
  CHECK(val == doctest::Approx(2.0));
  CHECK(z[1] == doctest::Approx(1.0));
  CHECK(z[2] == doctest::Approx(0.0));
}

TEST_CASE("best_vertex dominates random feasible points") {
  SplitMix64 rng(47);
  const StrategyPolytope tp = deep_treeplex();
  const Vec u = random_vec(rng, 9, -2.0, 2.0);
  const auto [z, val] = best_vertex(tp, u);
  for (int k = 0; k < 1000; ++k) {
    const Vec x = random_point(tp, rng);
    CHECK(dot(x, u) <= val + 1e-9);
  }
}

TEST_CASE("regularizer_min is the projection of the origin") {
  SUBCASE("simplex: uniform point") {
    const Vec z = regularizer_min(Simplex{5});
    for (double x : z) CHECK(x == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("one-action simplex") {
    const Vec z = regularizer_min(Simplex{1});
    CHECK(z[0] == doctest::Approx(1.0));
  }
  SUBCASE("treeplex: no feasible point is closer to the origin") {
    const StrategyPolytope tp = deep_treeplex();
    const Vec z = regularizer_min(tp);
    CHECK(is_feasible(tp, z));
    const double zn = dot(z, z);
    SplitMix64 rng(53);
    for (int k = 0; k < 1000; ++k) {
      const Vec x = random_point(tp, rng);
      // VI form: <x - z, 0 - z> <= tol  <=>  <x, z> >= <z, z> - tol.
      CHECK(dot(x, z) >= zn - 1e-7);
    }
  }
}

TEST_CASE("polytope constants") {
  SUBCASE("simplex dim 3") {
    const PolytopeConstants c = constants(Simplex{3});
    CHECK(c.norm_max == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.diameter == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(c.bregman_diameter == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("simplex dim 1 is a single point") {
    const PolytopeConstants c = constants(Simplex{1});
    CHECK(c.norm_max == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.diameter == doctest::Approx(0.0));
    CHECK(c.bregman_diameter == doctest::Approx(0.0));
  }
  SUBCASE("treeplex norm_max against vertex enumeration") {
    // ||z||_2 over a treeplex is maximized at a deterministic strategy
    // (convex maximization over a polytope attains at a vertex).
    for (const Treeplex& tp : {oracle::two_infoset_treeplex(), deep_treeplex()}) {
      double best = 0.0;
      for (const Vec& z : oracle::deterministic_strategies(tp))
        best = std::max(best, std::sqrt(dot(z, z)));
      const PolytopeConstants c = constants(tp);
      CHECK(c.norm_max >= best - 1e-9);
    }
  }
}

TEST_CASE("vertex_point and random_point are feasible") {
  SplitMix64 rng(59);
  const StrategyPolytope simplex = Simplex{4};
  const StrategyPolytope tp = deep_treeplex();
  for (const StrategyPolytope& p : {simplex, tp}) {
    for (int i = 0; i < 4; ++i) CHECK(is_feasible(p, vertex_point(p, i)));
    for (int k = 0; k < 50; ++k) CHECK(is_feasible(p, random_point(p, rng)));
  }
}

TEST_CASE("treeplex text form round-trips") {
  const Treeplex tp = deep_treeplex();
  std::stringstream s(tp.to_text());
  const Treeplex back = Treeplex::parse(s);
  CHECK(back.num_sequences() == tp.num_sequences());
  REQUIRE(back.infosets().size() == tp.infosets().size());
  for (std::size_t i = 0; i < tp.infosets().size(); ++i) {
    CHECK(back.infosets()[i].parent_sequence == tp.infosets()[i].parent_sequence);
    CHECK(back.infosets()[i].child_begin == tp.infosets()[i].child_begin);
    CHECK(back.infosets()[i].child_end == tp.infosets()[i].child_end);
  }
}

TEST_CASE("malformed treeplex structures are rejected") {
  // Child ranges must partition 1..n-1; overlaps and gaps both throw.
  CHECK_THROWS_AS(Treeplex(5, {{0, 1, 3}, {1, 2, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(Treeplex(6, {{0, 1, 3}, {1, 3, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(Treeplex(3, {{5, 1, 3}}), std::invalid_argument);
}
