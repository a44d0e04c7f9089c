#include "omdsim/game.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "omdsim/rng.hpp"

namespace omd {
namespace {

// Keep a CSR view only when it actually thins the matrix out.
bool worth_sparse(const Matrix& m) {
  const std::size_t cells = static_cast<std::size_t>(m.rows()) * m.cols();
  return cells >= 4096 && m.nonzero_count() * 4 < cells;
}

double max_column_norm(const Matrix& m) {
  double best = 0.0;
  for (int j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i) s += m(i, j) * m(i, j);
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double max_row_norm(const Matrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

}  // namespace

BimatrixGame::BimatrixGame(Matrix a, Matrix b, StrategyPolytope polytope_x,
                           StrategyPolytope polytope_y, std::string name)
    : a_(std::move(a)),
      b_(std::move(b)),
      polytope_x_(std::move(polytope_x)),
      polytope_y_(std::move(polytope_y)),
      name_(std::move(name)) {
  if (a_.rows() != b_.rows() || a_.cols() != b_.cols())
    throw std::invalid_argument("payoff matrices must have equal shapes");
  if (a_.rows() != polytope_dim(polytope_x_) ||
      a_.cols() != polytope_dim(polytope_y_))
    throw std::invalid_argument("matrix shape does not match the polytopes");
  if (a_.nonzero_count() == 0 && b_.nonzero_count() == 0)
    throw std::invalid_argument("a game needs at least one nonzero payoff");
  if (worth_sparse(a_)) a_sparse_ = SparseMatrix::from_dense(a_);
  if (worth_sparse(b_)) b_sparse_ = SparseMatrix::from_dense(b_);
}

Vec BimatrixGame::utility_x(const Vec& y) const {
  return a_sparse_ ? a_sparse_->multiply(y) : a_.multiply(y);
}

Vec BimatrixGame::utility_y(const Vec& x) const {
  return b_sparse_ ? b_sparse_->multiply_transposed(x) : b_.multiply_transposed(x);
}

bool BimatrixGame::is_zero_sum(double tol) const {
  for (int i = 0; i < a_.rows(); ++i)
    for (int j = 0; j < a_.cols(); ++j)
      if (std::fabs(a_(i, j) + b_(i, j)) > tol) return false;
  return true;
}

bool BimatrixGame::is_normal_form() const {
  return std::holds_alternative<Simplex>(polytope_x_) &&
         std::holds_alternative<Simplex>(polytope_y_);
}

double operator_norm(const Matrix& m) {
  if (m.nonzero_count() == 0)
    throw std::invalid_argument("operator_norm: zero matrix");
  Vec w(m.cols(), 1.0);
  double sigma = 0.0;
  // Power iteration on M^T M; each pass is one multiply by M then by M^T.
  for (int it = 0; it < 100000; ++it) {
    Vec mv = m.multiply(w);
    Vec w2 = m.multiply_transposed(mv);
    double n = norm2(w2);
    if (n == 0.0) {
      // Start vector orthogonal to every nonzero singular direction; reseed
      // deterministically and continue.
      SplitMix64 rng(0x5eedULL + static_cast<std::uint64_t>(it));
      for (double& v : w) v = rng.uniform(-1.0, 1.0);
      continue;
    }
    for (std::size_t i = 0; i < w2.size(); ++i) w2[i] /= n;
    const double sigma_new = std::sqrt(n);  // ||M^T M w|| with unit w
    const bool settled = std::fabs(sigma_new - sigma) <= 1e-10 * std::max(sigma_new, 1.0);
    sigma = sigma_new;
    w = std::move(w2);
    if (settled && it > 0) break;
  }
  return sigma;
}

NormalizationReport normalization_report(const BimatrixGame& g) {
  NormalizationReport rep;
  if (g.is_normal_form()) {
    // Over a simplex, ||A y|| is maximized at a vertex, so the max column
    // norm is the exact utility bound (rows of B for the transposed side).
    rep.method = NormalizationReport::Method::exact_vertex_max;
    rep.scale_a = max_column_norm(g.a());
    rep.scale_b = max_row_norm(g.b());
  } else {
    rep.method = NormalizationReport::Method::operator_norm_bound;
    const double omega_y = constants(g.polytope_y()).norm_max;
    const double omega_x = constants(g.polytope_x()).norm_max;
    rep.scale_a = g.a().nonzero_count() ? operator_norm(g.a()) * omega_y : 0.0;
    rep.scale_b = g.b().nonzero_count() ? operator_norm(g.b()) * omega_x : 0.0;
  }
  // An identically-zero matrix already satisfies the unit bound; leave it be.
  if (rep.scale_a == 0.0) rep.scale_a = 1.0;
  if (rep.scale_b == 0.0) rep.scale_b = 1.0;
  return rep;
}

std::pair<BimatrixGame, NormalizationReport> normalize(const BimatrixGame& g) {
  NormalizationReport rep = normalization_report(g);
  BimatrixGame scaled(g.a().scaled(1.0 / rep.scale_a), g.b().scaled(1.0 / rep.scale_b),
                      g.polytope_x(), g.polytope_y(), g.name() + "-normalized");
  return {std::move(scaled), rep};
}

BimatrixGame example_game() {
  Matrix a = Matrix::from_rows({{1, 0, 0}, {-1, 1, 0}, {0, 0, 1}});
  Matrix b = Matrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  return BimatrixGame(std::move(a), std::move(b), Simplex{3}, Simplex{3},
                      "example-3x3");
}

BimatrixGame zero_sum_counterpart(const BimatrixGame& g) {
  return BimatrixGame(g.a(), g.a().negated(), g.polytope_x(), g.polytope_y(),
                      g.name() + "-zerosum");
}

BimatrixGame random_game(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("random_game: empty shape");
  SplitMix64 rng(seed);
  Matrix a(n, m), b(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
  std::ostringstream name;
  name << "random-" << n << "x" << m << "-s" << seed;
  BimatrixGame raw(std::move(a), std::move(b), Simplex{n}, Simplex{m}, name.str());
  return normalize(raw).first;
}

BimatrixGame read_game(std::istream& in, const std::string& name) {
  int n = 0, m = 0;
  if (!(in >> n >> m) || n < 1 || m < 1)
    throw std::invalid_argument("game file: expected 'n m' on the first line");
  Matrix a(n, m), b(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (!(in >> a(i, j)))
        throw std::invalid_argument("game file: matrix A ended early");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (!(in >> b(i, j)))
        throw std::invalid_argument("game file: matrix B ended early");
  // Optional sequence-form polytopes: "treeplex x" / "treeplex y" sections.
  StrategyPolytope px = Simplex{n};
  StrategyPolytope py = Simplex{m};
  std::string word;
  while (in >> word) {
    if (word != "treeplex")
      throw std::invalid_argument("game file: unexpected trailing token '" + word +
                                  "'");
    std::string which;
    if (!(in >> which) || (which != "x" && which != "y"))
      throw std::invalid_argument("game file: expected 'treeplex x' or 'treeplex y'");
    // The treeplex body runs until the next "treeplex" keyword or EOF.
    std::ostringstream body;
    std::string line;
    std::getline(in, line);
    while (in.peek() != std::char_traits<char>::eof()) {
      const auto pos = in.tellg();
      if (!std::getline(in, line)) break;
      std::istringstream probe(line);
      std::string first;
      probe >> first;
      if (first == "treeplex") {
        in.seekg(pos);
        break;
      }
      body << line << "\n";
    }
    std::istringstream body_in(body.str());
    if (which == "x")
      px = Treeplex::parse(body_in);
    else
      py = Treeplex::parse(body_in);
  }
  return BimatrixGame(std::move(a), std::move(b), std::move(px), std::move(py), name);
}

BimatrixGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open game file: " + path);
  // Use the file stem as the game name.
  auto slash = path.find_last_of('/');
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  return read_game(in, stem);
}

void write_game(std::ostream& out, const BimatrixGame& g) {
  out << g.rows() << " " << g.cols() << "\n";
  out.precision(17);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) out << (j ? " " : "") << g.a()(i, j);
    out << "\n";
  }
  out << "\n";
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) out << (j ? " " : "") << g.b()(i, j);
    out << "\n";
  }
  if (const auto* tx = std::get_if<Treeplex>(&g.polytope_x()))
    out << "treeplex x\n" << tx->to_text();
  if (const auto* ty = std::get_if<Treeplex>(&g.polytope_y()))
    out << "treeplex y\n" << ty->to_text();
}

}  // namespace omd
