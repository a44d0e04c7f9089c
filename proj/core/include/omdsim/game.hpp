// Bimatrix games over strategy polytopes, their normalization to unit
// utility norms, spectral norms, and the built-in matrix games.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "omdsim/linalg.hpp"
#include "omdsim/polytope.hpp"

namespace omd {

struct NormalizationReport {
  enum class Method { exact_vertex_max, operator_norm_bound };
  double scale_a = 1.0;
  double scale_b = 1.0;
  Method method = Method::exact_vertex_max;
};

// Two-player game: X maximizes x^T A y, Y maximizes x^T B y, with x and y
// ranging over the respective polytopes (simplices for normal form,
// treeplexes for sequence form). Immutable after construction.
class BimatrixGame {
 public:
  BimatrixGame(Matrix a, Matrix b, StrategyPolytope polytope_x,
               StrategyPolytope polytope_y, std::string name);

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const StrategyPolytope& polytope_x() const { return polytope_x_; }
  const StrategyPolytope& polytope_y() const { return polytope_y_; }
  const std::string& name() const { return name_; }

  int rows() const { return a_.rows(); }
  int cols() const { return a_.cols(); }

  // X's utility vector A y and Y's utility vector B^T x. Sequence-form
  // payoff matrices are >99% sparse, so a CSR view is kept when it pays off.
  Vec utility_x(const Vec& y) const;
  Vec utility_y(const Vec& x) const;

  double payoff_x(const Vec& x, const Vec& y) const { return dot(x, utility_x(y)); }
  double payoff_y(const Vec& x, const Vec& y) const { return dot(y, utility_y(x)); }

  bool is_zero_sum(double tol = 1e-12) const;
  bool is_normal_form() const;

 private:
  Matrix a_, b_;
  StrategyPolytope polytope_x_, polytope_y_;
  std::string name_;
  std::optional<SparseMatrix> a_sparse_, b_sparse_;
};

// Spectral norm via power iteration on M^T M, relative tolerance 1e-10,
// deterministic all-ones start (with a deterministic reseed if that start
// happens to be orthogonal to the dominant eigenspace). Throws on the zero
// matrix.
double operator_norm(const Matrix& m);

// The scales normalize() would divide by, without building the scaled game.
NormalizationReport normalization_report(const BimatrixGame& g);

// Scales A and B (independently, preserving equilibria and regret signs) so
// every utility vector has Euclidean norm <= 1 over the feasible sets.
// Simplex: exact vertex maximum (max column norm of A / row norm of B).
// Treeplex: the safe upper bound operator_norm(M) * norm_max of the opposing
// polytope. A matrix that is identically zero is left unscaled.
std::pair<BimatrixGame, NormalizationReport> normalize(const BimatrixGame& g);

// The 3x3 general-sum game used throughout the docs, with a unique Nash
// equilibrium ((1/3,1/3,1/3), (1/4,1/2,1/4)); returned with its original
// (unnormalized) utilities under the name "example-3x3".
BimatrixGame example_game();

// (A, -A) with the same polytopes; name suffixed "-zerosum".
BimatrixGame zero_sum_counterpart(const BimatrixGame& g);

// Seeded normal-form game with entries i.i.d. uniform in [-1, 1] (SplitMix64,
// row-major A then B), then normalized. Reproducible bit-for-bit per seed.
BimatrixGame random_game(int n, int m, std::uint64_t seed);

// Plain-text format: first line "n m", then n rows of m reals for A, a blank
// line, and n rows for B. Optionally followed by "treeplex x" / "treeplex y"
// sections carrying the polytope text form for sequence-form games.
BimatrixGame read_game(std::istream& in, const std::string& name);
BimatrixGame load_game_file(const std::string& path);
void write_game(std::ostream& out, const BimatrixGame& g);

}  // namespace omd
