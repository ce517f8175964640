#pragma once

#include "roughsio/cover.hpp"
#include "roughsio/grid.hpp"
#include "roughsio/testfunction.hpp"

namespace rsio {

// Probe sets for the maximal operators. The continuous suprema over r and t
// are restricted to these dyadic sets, so every output is a certified lower
// bound of the true maximal function.
struct MaximalConfig {
  std::vector<double> radii;      // ball radii for M / M_H
  std::vector<double> dilations;  // star/rectangle dilations for the t sup
  double mu = 0.0;                // fractional order, 0 <= mu < n

  static MaximalConfig dyadic(int j_min = -4, int j_max = 4);
};

// Hardy-Littlewood with the r^{-n} normalization (not |B|^{-1}).
GridFunction hl_max(const GridFunction& f, const MaximalConfig& cfg);

// sup_r r^{-n} int_{|y|<r} H(x,y) |f(x-y)| dy.
GridFunction m_h(const GridFunction& f, const HFactor& H,
                 const MaximalConfig& cfg);

// sup_t t^{-(n-mu)} over balls (starlike = nullptr) or star dilates.
GridFunction m_fractional(const GridFunction& f, const HFactor& H,
                          double mu, const MaximalConfig& cfg,
                          const StarSet* starlike = nullptr);

// sup_t t^{-n} int_{tS} H(x,y) |f(x-y)| dy.
GridFunction m_sh(const GridFunction& f, const StarSet& star, const HFactor& H,
                  const MaximalConfig& cfg);

// Same with tS replaced by dilates of one origin-centered rectangle.
GridFunction m_rect(const GridFunction& f, const Rectangle& rect,
                    const HFactor& H, const MaximalConfig& cfg);

// Pointwise starlike maximal value for an analytic function (polar
// evaluation over the kernel cells; exact arcs, no grid).
double m_sh_point(const StarSet& star, const HFactor& H, const TestFunction& f,
                  const Point& x, const MaximalConfig& cfg);

// sup over probe radii and centers of r^{-n} int_{|y|<r} H(x,y)^sigma dy.
struct HCubeEstimate {
  double constant = 0.0;
  double growth_slope = 0.0;  // toward r -> 0
  bool rejected = false;
  std::vector<double> per_radius;  // sup over centers, per probe radius
};
HCubeEstimate hcube_check(const HFactor& H, double sigma,
                          const std::vector<double>& radii,
                          const std::vector<Point>& centers,
                          double growth_tol = 0.05);

// Discrete analogue of hcube_check on a grid geometry (same offsets and
// membership as m_h), used by the pointwise domination inequality.
double hcube_grid_constant(const GridFunction& geometry, const HFactor& H,
                           double sigma, const MaximalConfig& cfg);

struct NormProbe {
  double max_ratio = 0.0;
  std::vector<double> ratios;
  int skipped = 0;  // zero-norm test functions
};

// max over test functions of ||op f||_{p,w} / ||f||_{p,w} on the grid.
NormProbe empirical_norm(
    const std::function<GridFunction(const GridFunction&)>& op, double p,
    const Weight& w, const std::vector<GridFunction>& test_set);

}  // namespace rsio
