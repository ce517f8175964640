#pragma once

#include <map>
#include <string>
#include <vector>

#include "roughsio/cover.hpp"

namespace rsio {

// Positive locally integrable weight with a named family tag. Power weights
// |x|^alpha carry their exponent so averages and divergence predicates stay
// analytic under the w -> w^s compositions below.
struct Weight {
  enum class Family { Constant, Power, Exp, Custom } family = Family::Constant;
  double value = 1.0;       // constant c
  double alpha = 0.0;       // power exponent
  Point exp_dir;            // Exp: w = exp(dir . x)
  std::function<double(const Point&)> custom;
  std::string name = "constant";

  double eval(const Point& x) const;

  // w^s with the family tag propagated.
  Weight powered(double s) const;

  static Weight constant(double c = 1.0);
  static Weight power(double alpha);
  static Weight exponential(const Point& dir);
  static Weight custom_fn(std::function<double(const Point&)> fn,
                          const std::string& name = "custom");
};

// w^{-p'/p}; the dual exponent p' satisfies 1/p + 1/p' = 1.
Weight dual_weight(const Weight& w, double p);

inline double dual_exponent(double p) {
  if (!(p > 1.0)) fail(ErrorKind::Domain, "dual exponent needs p > 1");
  return p / (p - 1.0);
}

struct AvgResult {
  double value = 0.0;
  bool divergent = false;
};

// |R|^{-1} int_R w^power over a translate/dilate box. Power and exponential
// families are evaluated by closed forms (boundary reduction for |x|^beta);
// custom weights fall back to adaptive tensor quadrature with origin-aware
// subdivision. Throws NonConvergence naming the region if refinement fails;
// divergent averages are flagged, not thrown.
AvgResult avg(const Weight& w, const Box& region, double power = 1.0);

// Hard error variant for callers that treat divergence as unusable.
double avg_value(const Weight& w, const Box& region, double power = 1.0);

struct TwoAverageResult {
  double value = 0.0;     // the two-average product on the region
  bool divergent = false;
};

struct ApEstimate {
  double constant = 0.0;
  bool in_class = true;   // false when some cube average diverges
  int cubes_probed = 0;
};

// Sample family of cubes for the A_p style estimates: centers on a grid in
// [-span, span]^n plus the origin, dyadic side lengths 2^j, |j| <= jmax.
std::vector<Box> sample_cubes(int n, double span = 8.0, int centers_per_axis = 5,
                              int jmax = 6);

ApEstimate ap_constant(const Weight& w, double p, const std::vector<Box>& cubes);
// Bumped variant: (avg w)^{1/p} (avg w^{-r p'/p})^{1/(r p')}.
ApEstimate apr_constant(const Weight& w, double p, double r,
                        const std::vector<Box>& cubes);

enum class RectMode { Ca, Cb, Aunif, B2 };

struct RectEntry {
  int m = 0;
  int k = 0;
  double K = 0.0;        // |R| * sup product (Ca/Cb/B2); sup product (Aunif)
  bool divergent = false;
};

struct RectConditionReport {
  RectMode mode = RectMode::Ca;
  double p = 2.0, r = 1.0;
  std::vector<RectEntry> entries;
  std::vector<double> partial_sums;  // over strata blocks, (m+1)-weighted
  double total = 0.0;
  bool cauchy_ok = false;     // last stratum block < 1% of total
  double decay_rate = 0.0;    // fitted log2 slope of blocks vs m
  bool finite_family = false; // cover exhausts the kernel's strata
  bool any_divergent = false;
  bool certified = false;     // at probe scale (see header notes)
  double uniform_sup = 0.0;   // Aunif: sup over all rectangles
};

// Evaluates the rectangle weight condition of the requested mode over the
// sampled family B(R_{m,k}) of every cover rectangle, with the
// (m+1)-weighted summability report. The sampled sup is a lower bound of
// the true sup; the verdict is "certified at probe scale" only.
RectConditionReport rect_condition(const Weight& w, double p, double r,
                                   const std::vector<CoverRectangle>& rects,
                                   RectMode mode, bool finite_family = true,
                                   double cauchy_block_tol = 0.01,
                                   double decay_fit_tol = 0.05);

TwoAverageResult two_average(const Weight& w, double p, double r, const Box& box,
                             RectMode mode);

}  // namespace rsio
