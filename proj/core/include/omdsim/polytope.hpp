// Strategy polytopes: the probability simplex and the treeplex (the
// sequence-form polytope of a perfect-recall extensive-form game), with
// Euclidean projection, linear maximization (best response), regularizer
// minimizer, and the geometric constants used by the inequality checkers.
#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "omdsim/linalg.hpp"

namespace omd {

struct Simplex {
  int dim = 0;  // number of pure actions; points are distributions over them
};

// The treeplex is described by its constraint system:
//   z[0] = 1 (empty sequence), and for every information set,
//   sum of z over the infoset's child sequences == z[parent_sequence].
// Child ranges are disjoint, cover 1..num_sequences-1 exactly once, and
// infosets are listed in topological order (parents introduced first).
class Treeplex {
 public:
  struct Infoset {
    int parent_sequence = 0;
    int child_begin = 0;  // child sequences are [child_begin, child_end)
    int child_end = 0;
  };

  Treeplex(int num_sequences, std::vector<Infoset> infosets);

  int num_sequences() const { return impl_->num_sequences; }
  const std::vector<Infoset>& infosets() const { return impl_->infosets; }

  // For each sequence, the infosets having it as their parent (children in
  // the tree-of-infosets sense); used by best-response and max-mass DPs.
  const std::vector<std::vector<int>>& infosets_under() const {
    return impl_->infosets_under;
  }

  bool is_feasible(const Vec& z, double tol) const;

  // Projects onto the affine part {z : z[0] = 1, child sums match parents}.
  // Equality-constrained least squares splits along the tree: each subtree's
  // optimal cost is a quadratic in the mass entering it, so two linear-time
  // sweeps (collect quadratics bottom-up, split mass top-down) give the
  // exact affine projection.
  Vec project_affine(const Vec& v) const;

  // Plain-text form: first line num_sequences, then one line per infoset
  // "parent: child_begin..child_end" (end exclusive).
  std::string to_text() const;
  static Treeplex parse(std::istream& in);

 private:
  struct Impl {
    int num_sequences = 0;
    std::vector<Infoset> infosets;
    std::vector<std::vector<int>> infosets_under;
    // Shape-only coefficients of the affine projection: the optimal cost of
    // the subtree hanging off sequence c is alpha[c] z_c^2 + (v-dependent
    // linear part), and inv_s[i] = 1 / sum over infoset i's children of
    // 1/(2 alpha). Built once at construction and shared by copies.
    Vec alpha;
    Vec inv_s;
  };
  std::shared_ptr<const Impl> impl_;
};

using StrategyPolytope = std::variant<Simplex, Treeplex>;

int polytope_dim(const StrategyPolytope& p);

// Geometric constants consumed by the trajectory inequality checkers.
// For treeplexes, diameter and bregman_diameter are safe upper bounds
// (exact maxima are not tractable); upper bounds keep every checked
// inequality valid.
struct PolytopeConstants {
  double norm_max = 0.0;          // max ||x||_2 over the set
  double diameter = 0.0;          // max ||x - y||_2 over the set
  double bregman_diameter = 0.0;  // max_x (1/2)||x - argmin||^2 for (1/2)||.||^2
};

// Exact Euclidean projection onto the simplex via sort-and-threshold.
Vec project_simplex(const Vec& v);

// Euclidean projection onto the treeplex by Dykstra's alternating scheme
// between the affine constraint set and the nonnegative orthant. Converges
// to the exact projection; stops when successive iterates move < tol.
// Throws on non-convergence within the iteration cap, reporting the last
// residual.
Vec project_treeplex(const Treeplex& tp, const Vec& v, double tol = 1e-10,
                     int iteration_cap = 100000);

Vec project(const StrategyPolytope& p, const Vec& v, double tol = 1e-10);

// A vertex maximizing <x, u> together with the attained value.
// Simplex: argmax coordinate, ties to the lowest index. Treeplex: bottom-up
// dynamic program over infosets; the returned point is the deterministic
// sequence-form strategy induced by the argmax choices (lowest index on ties).
std::pair<Vec, double> best_vertex(const StrategyPolytope& p, const Vec& u);

// argmin of (1/2)||x||^2 over the polytope, i.e. the projection of the
// origin; the canonical initialization point of the dynamics.
Vec regularizer_min(const StrategyPolytope& p);

// Deterministic vertex used for non-uniform initialization. Simplex: the
// pure strategy `index` (must be < dim). Treeplex: the pure strategy that
// picks child (index mod branching) at every information set.
Vec vertex_point(const StrategyPolytope& p, int index);

// A random feasible point: simplex weights drawn uniform and renormalized;
// treeplex built the same way per infoset, top down, as a realization plan.
class SplitMix64;
Vec random_point(const StrategyPolytope& p, SplitMix64& rng);

PolytopeConstants constants(const StrategyPolytope& p);

bool is_feasible(const StrategyPolytope& p, const Vec& z, double tol = 1e-9);

}  // namespace omd
