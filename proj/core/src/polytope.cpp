#include "omdsim/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "omdsim/rng.hpp"

namespace omd {
namespace {

}  // namespace

Treeplex::Treeplex(int num_sequences, std::vector<Infoset> infosets) {
  if (num_sequences < 1) throw std::invalid_argument("treeplex needs >= 1 sequence");
  // Validate: ranges disjoint, cover 1..n-1 exactly once, parents topological.
  std::vector<int> owner(num_sequences, -1);  // infoset introducing the sequence
  for (std::size_t i = 0; i < infosets.size(); ++i) {
    const Infoset& s = infosets[i];
    if (s.child_begin >= s.child_end || s.child_begin < 1 ||
        s.child_end > num_sequences)
      throw std::invalid_argument("treeplex infoset child range invalid");
    if (s.parent_sequence < 0 || s.parent_sequence >= num_sequences)
      throw std::invalid_argument("treeplex infoset parent out of range");
    if (s.parent_sequence != 0 && owner[s.parent_sequence] < 0)
      throw std::invalid_argument(
          "treeplex infosets not in topological order (parent introduced later)");
    for (int c = s.child_begin; c < s.child_end; ++c) {
      if (owner[c] >= 0)
        throw std::invalid_argument("treeplex child ranges overlap");
      owner[c] = static_cast<int>(i);
    }
  }
  for (int c = 1; c < num_sequences; ++c)
    if (owner[c] < 0)
      throw std::invalid_argument("treeplex sequence not covered by any infoset");

  auto impl = std::make_shared<Impl>();
  impl->num_sequences = num_sequences;
  impl->infosets = std::move(infosets);
  impl->infosets_under.assign(num_sequences, {});
  for (std::size_t i = 0; i < impl->infosets.size(); ++i)
    impl->infosets_under[impl->infosets[i].parent_sequence].push_back(
        static_cast<int>(i));

  // Shape-only half of the affine-projection elimination. With everything
  // below sequence c at its optimum, the cost of c's subtree is a quadratic
  // alpha[c] z_c^2 + beta_c z_c (beta depends on the projected point, alpha
  // does not). A bare sequence costs (1/2)(z - v)^2, and an infoset under it
  // adds the quadratic obtained by optimally splitting mass among children:
  // coefficient 1/(2 S_i) with S_i = sum over children of 1/(2 alpha).
  impl->alpha.assign(num_sequences, 0.5);
  impl->inv_s.assign(impl->infosets.size(), 0.0);
  for (int i = static_cast<int>(impl->infosets.size()) - 1; i >= 0; --i) {
    const Infoset& s = impl->infosets[i];
    double sum = 0.0;
    for (int c = s.child_begin; c < s.child_end; ++c) sum += 0.5 / impl->alpha[c];
    impl->inv_s[i] = 1.0 / sum;
    impl->alpha[s.parent_sequence] += 0.5 * impl->inv_s[i];
  }
  impl_ = std::move(impl);
}

Vec Treeplex::project_affine(const Vec& v) const {
  const auto& sets = impl_->infosets;
  const Vec& alpha = impl_->alpha;
  const int n_sets = static_cast<int>(sets.size());

  // Bottom-up: fold each infoset's children into the linear coefficient of
  // its parent sequence. r[i] holds sum over children of beta/(2 alpha).
  Vec beta(v.size());
  for (std::size_t c = 0; c < v.size(); ++c) beta[c] = -v[c];
  Vec r(sets.size(), 0.0);
  for (int i = n_sets - 1; i >= 0; --i) {
    double acc = 0.0;
    for (int c = sets[i].child_begin; c < sets[i].child_end; ++c)
      acc += 0.5 * beta[c] / alpha[c];
    r[i] = acc;
    beta[sets[i].parent_sequence] += acc * impl_->inv_s[i];
  }

  // Top-down: pin the root mass, then split each infoset's incoming mass at
  // the common multiplier mu = (mass + r[i]) / S_i, children taking
  // (mu - beta) / (2 alpha). Parents precede children in infoset order, so
  // every incoming mass is final when read.
  Vec z(v.size());
  z[0] = 1.0;
  for (int i = 0; i < n_sets; ++i) {
    const double mu = (z[sets[i].parent_sequence] + r[i]) * impl_->inv_s[i];
    for (int c = sets[i].child_begin; c < sets[i].child_end; ++c)
      z[c] = (mu - beta[c]) / (2.0 * alpha[c]);
  }
  return z;
}

bool Treeplex::is_feasible(const Vec& z, double tol) const {
  if (static_cast<int>(z.size()) != impl_->num_sequences) return false;
  for (double v : z)
    if (v < -tol) return false;
  if (std::fabs(z[0] - 1.0) > tol) return false;
  for (const Infoset& s : impl_->infosets) {
    double sum = 0.0;
    for (int c = s.child_begin; c < s.child_end; ++c) sum += z[c];
    if (std::fabs(sum - z[s.parent_sequence]) > tol) return false;
  }
  return true;
}

std::string Treeplex::to_text() const {
  std::ostringstream out;
  out << impl_->num_sequences << "\n";
  for (const Infoset& s : impl_->infosets)
    out << s.parent_sequence << ": " << s.child_begin << ".." << s.child_end
        << "\n";
  return out.str();
}

Treeplex Treeplex::parse(std::istream& in) {
  int n = 0;
  if (!(in >> n)) throw std::invalid_argument("treeplex text: missing num_sequences");
  std::vector<Infoset> sets;
  std::string line;
  std::getline(in, line);  // consume the rest of the first line
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    Infoset s;
    char colon = 0;
    std::istringstream ls(line);
    if (!(ls >> s.parent_sequence >> colon) || colon != ':')
      throw std::invalid_argument("treeplex text: expected 'parent: a..b', got '" +
                                  line + "'");
    std::string range;
    ls >> range;
    const auto dots = range.find("..");
    if (dots == std::string::npos)
      throw std::invalid_argument("treeplex text: bad child range '" + range + "'");
    s.child_begin = std::stoi(range.substr(0, dots));
    s.child_end = std::stoi(range.substr(dots + 2));
    sets.push_back(s);
  }
  return Treeplex(n, std::move(sets));
}

int polytope_dim(const StrategyPolytope& p) {
  if (const auto* s = std::get_if<Simplex>(&p)) return s->dim;
  return std::get<Treeplex>(p).num_sequences();
}

Vec project_simplex(const Vec& v) {
  if (v.empty()) throw std::invalid_argument("project_simplex: empty vector");
  const int n = static_cast<int>(v.size());
  // Sort-and-threshold: find the largest k with v_(k) > (sum of top k - 1)/k,
  // then clip at that threshold. Exact up to floating point.
  Vec sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0;
  double theta = 0.0;
  for (int k = 0; k < n; ++k) {
    running += sorted[k];
    const double candidate = (running - 1.0) / (k + 1);
    if (k + 1 == n || sorted[k + 1] <= candidate) {
      theta = candidate;
      break;
    }
  }
  Vec z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) z[i] = std::max(v[i] - theta, 0.0);
  return z;
}

Vec project_treeplex(const Treeplex& tp, const Vec& v, double tol,
                     int iteration_cap) {
  if (static_cast<int>(v.size()) != tp.num_sequences())
    throw std::invalid_argument("project_treeplex: dimension mismatch");
  // Dykstra over {affine set, nonnegative orthant}. Affine sets need no
  // correction term, so only the orthant's correction p is tracked; this
  // specialization still converges to the exact Euclidean projection.
  Vec z = v;
  Vec p(v.size(), 0.0);
  double residual = 0.0;
  for (int it = 0; it < iteration_cap; ++it) {
    Vec w = tp.project_affine(z);
    axpy(w, 1.0, p);
    double moved = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double zi = std::max(w[i], 0.0);
      p[i] = w[i] - zi;
      const double d = zi - z[i];
      moved += d * d;
      z[i] = zi;
    }
    residual = std::sqrt(moved);
    if (residual < tol) return z;
  }
  throw std::runtime_error("project_treeplex: no convergence after " +
                           std::to_string(iteration_cap) +
                           " iterations, last residual " + std::to_string(residual));
}

Vec project(const StrategyPolytope& p, const Vec& v, double tol) {
  if (std::holds_alternative<Simplex>(p)) return project_simplex(v);
  return project_treeplex(std::get<Treeplex>(p), v, tol);
}

namespace {

std::pair<Vec, double> best_vertex_simplex(int dim, const Vec& u) {
  int arg = 0;
  for (int i = 1; i < dim; ++i)
    if (u[i] > u[arg]) arg = i;
  Vec z(dim, 0.0);
  z[arg] = 1.0;
  return {std::move(z), u[arg]};
}

std::pair<Vec, double> best_vertex_treeplex(const Treeplex& tp, const Vec& u) {
  const auto& sets = tp.infosets();
  // Bottom-up: value[s] = u[s] + sum over infosets under s of their best
  // child value. Infosets are topological, so a reverse sweep sees every
  // child's final value before its parent needs it.
  Vec value = u;
  std::vector<int> choice(sets.size(), 0);
  for (int i = static_cast<int>(sets.size()) - 1; i >= 0; --i) {
    int best = sets[i].child_begin;
    for (int c = sets[i].child_begin + 1; c < sets[i].child_end; ++c)
      if (value[c] > value[best]) best = c;
    choice[i] = best;
    value[sets[i].parent_sequence] += value[best];
  }
  Vec z(tp.num_sequences(), 0.0);
  z[0] = 1.0;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (z[sets[i].parent_sequence] > 0.0) z[choice[i]] = 1.0;
  return {std::move(z), value[0]};
}

}  // namespace

std::pair<Vec, double> best_vertex(const StrategyPolytope& p, const Vec& u) {
  if (static_cast<int>(u.size()) != polytope_dim(p))
    throw std::invalid_argument("best_vertex: dimension mismatch");
  if (const auto* s = std::get_if<Simplex>(&p)) return best_vertex_simplex(s->dim, u);
  return best_vertex_treeplex(std::get<Treeplex>(p), u);
}

Vec regularizer_min(const StrategyPolytope& p) {
  if (const auto* s = std::get_if<Simplex>(&p))
    return Vec(s->dim, 1.0 / s->dim);
  const auto& tp = std::get<Treeplex>(p);
  return project_treeplex(tp, Vec(tp.num_sequences(), 0.0), 1e-10);
}

PolytopeConstants constants(const StrategyPolytope& p) {
  PolytopeConstants c;
  if (const auto* s = std::get_if<Simplex>(&p)) {
    c.norm_max = 1.0;
    c.diameter = s->dim >= 2 ? std::sqrt(2.0) : 0.0;
    // (1/2) max over vertices of ||e - uniform||^2 = (1/2)(1 - 1/dim)
    c.bregman_diameter = 0.5 * (1.0 - 1.0 / s->dim);
    return c;
  }
  const auto& tp = std::get<Treeplex>(p);
  // Max number of ones over deterministic strategies: each infoset under an
  // active sequence contributes its best child subtree, and every sequence
  // in the support contributes one.
  Vec count(tp.num_sequences(), 1.0);
  const auto& sets = tp.infosets();
  for (int i = static_cast<int>(sets.size()) - 1; i >= 0; --i) {
    double best = 0.0;
    for (int ch = sets[i].child_begin; ch < sets[i].child_end; ++ch)
      best = std::max(best, count[ch]);
    count[sets[i].parent_sequence] += best;
  }
  c.norm_max = std::sqrt(count[0]);
  c.diameter = 2.0 * c.norm_max;            // safe upper bound
  c.bregman_diameter = 0.5 * c.diameter * c.diameter;  // safe upper bound
  return c;
}

Vec vertex_point(const StrategyPolytope& p, int index) {
  if (index < 0) throw std::invalid_argument("vertex_point: negative index");
  if (const auto* s = std::get_if<Simplex>(&p)) {
    if (index >= s->dim)
      throw std::invalid_argument("vertex_point: index " + std::to_string(index) +
                                  " out of range for simplex of dimension " +
                                  std::to_string(s->dim));
    Vec z(s->dim, 0.0);
    z[index] = 1.0;
    return z;
  }
  const auto& tp = std::get<Treeplex>(p);
  Vec z(tp.num_sequences(), 0.0);
  z[0] = 1.0;
  for (const auto& set : tp.infosets()) {
    if (z[set.parent_sequence] <= 0.0) continue;
    const int branching = set.child_end - set.child_begin;
    z[set.child_begin + index % branching] = z[set.parent_sequence];
  }
  return z;
}

Vec random_point(const StrategyPolytope& p, SplitMix64& rng) {
  if (const auto* s = std::get_if<Simplex>(&p)) {
    Vec z(s->dim);
    double sum = 0.0;
    for (double& v : z) {
      v = rng.next_double();
      sum += v;
    }
    if (sum <= 0.0) return Vec(s->dim, 1.0 / s->dim);
    for (double& v : z) v /= sum;
    return z;
  }
  const auto& tp = std::get<Treeplex>(p);
  Vec z(tp.num_sequences(), 0.0);
  z[0] = 1.0;
  for (const auto& set : tp.infosets()) {
    const int branching = set.child_end - set.child_begin;
    Vec w(branching);
    double sum = 0.0;
    for (double& v : w) {
      v = rng.next_double();
      sum += v;
    }
    const double mass = z[set.parent_sequence];
    for (int k = 0; k < branching; ++k)
      z[set.child_begin + k] =
          sum > 0.0 ? mass * w[k] / sum : mass / branching;
  }
  return z;
}

bool is_feasible(const StrategyPolytope& p, const Vec& z, double tol) {
  if (static_cast<int>(z.size()) != polytope_dim(p)) return false;
  if (const auto* s = std::get_if<Simplex>(&p)) {
    double sum = 0.0;
    for (double v : z) {
      if (v < -tol) return false;
      sum += v;
    }
    return std::fabs(sum - 1.0) <= std::max(tol, 1e-9);
  }
  return std::get<Treeplex>(p).is_feasible(z, tol);
}

}  // namespace omd
