#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "omdsim/linalg.hpp"
#include "omdsim/polytope.hpp"

namespace omd {

// Mirror-descent distance generator. Implementations must be strongly
// convex (making the prox single-valued) and have a Lipschitz gradient;
// the smoothness constant feeds the fixed-point certificate used by the
// equilibrium detector.
class Regularizer {
 public:
  virtual ~Regularizer() = default;

  // Smoothness constant of the gradient.
  virtual double smoothness() const = 0;

  virtual Vec gradient(const Vec& x) const = 0;

  // One mirror step: argmax over p of <g, x> - D(x || anchor), where D is
  // the Bregman divergence of this regularizer.
  virtual Vec prox(const Vec& anchor, const Vec& g, const StrategyPolytope& p,
                   double tol) const = 0;

  // argmin of the regularizer over p; the dynamics start here.
  virtual Vec minimizer(const StrategyPolytope& p, double tol) const = 0;
};

// R(x) = (alpha/2)·||x - c||² with c defaulting to the origin. Its Bregman
// divergence is (alpha/2)·||x - y||², so the prox is a Euclidean projection
// of anchor + g/alpha; alpha = 1 with the origin center recovers plain
// projected gradient steps.
class QuadraticRegularizer final : public Regularizer {
 public:
  explicit QuadraticRegularizer(double alpha = 1.0,
                                std::optional<Vec> center = std::nullopt)
      : alpha_(alpha), center_(std::move(center)) {
    if (!(alpha_ > 0.0))
      throw std::invalid_argument("quadratic regularizer needs alpha > 0");
  }

  double smoothness() const override { return alpha_; }

  Vec gradient(const Vec& x) const override {
    Vec g = x;
    if (center_) {
      if (center_->size() != g.size())
        throw std::invalid_argument("quadratic regularizer: center dimension mismatch");
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= (*center_)[i];
    }
    for (double& v : g) v *= alpha_;
    return g;
  }

  Vec prox(const Vec& anchor, const Vec& g, const StrategyPolytope& p,
           double tol) const override {
    Vec z = anchor;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += g[i] / alpha_;
    return project(p, z, tol);
  }

  Vec minimizer(const StrategyPolytope& p, double tol) const override {
    if (center_) return project(p, *center_, tol);
    return regularizer_min(p);
  }

 private:
  double alpha_;
  std::optional<Vec> center_;
};

}  // namespace omd
