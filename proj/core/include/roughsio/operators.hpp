#pragma once

#include "roughsio/starset.hpp"
#include "roughsio/testfunction.hpp"

namespace rsio {

// Analytic integrand wrapper: a function with declared sup-norm, gradient
// bound, and (effective) support ball. Linear combinations of test functions
// stay analytic, which the linearity and covariance checks rely on.
struct Analytic {
  std::function<double(const Point&)> f;
  Point support_center;
  double support_radius = 1.0;
  double sup = 1.0;
  double grad_sup = 1.0;

  double operator()(const Point& x) const { return f(x); }

  static Analytic of(const TestFunction& t);
  static Analytic combo(const std::vector<std::pair<double, TestFunction>>& terms);
};

struct EvalResult {
  Complex value{0.0, 0.0};
  // Absolute-convergence majorant of the evaluated integral.
  double abs_bound = 0.0;
};

struct RepResult {
  Complex value{0.0, 0.0};
  double tail_bound = 0.0;     // discarded t-integral beyond the grid
  double small_t_bound = 0.0;  // discarded t-integral below the grid (pv)
  double t_min = 0.0, t_max = 0.0;
  int blocks = 0;
};

struct PvLimitResult {
  Complex limit{0.0, 0.0};
  std::vector<double> epsilons;
  std::vector<Complex> values;
  std::vector<Complex> differences;
  std::vector<double> difference_bounds;  // ||Omega||_1 ||grad f||_inf int |h|
  double tail_bound = 0.0;
  bool cauchy = true;  // no-limit flag when false
};

struct PvRepResult {
  Complex value{0.0, 0.0};
  Complex correction{0.0, 0.0};  // h(0) c_Omega f(x)
  double tail_bound = 0.0;
  double small_t_bound = 0.0;
};

struct CommutatorResult {
  Complex direct{0.0, 0.0};
  Complex rep{0.0, 0.0};
  Complex multiplier{0.0, 0.0};  // pv mode only
};

// Evaluator for truncated / principal-value convolution-type integrals with
// kernel Omega(y)|y|^{-n} h(|y|) (optionally times a bounded non-convolution
// factor k(x, y)), against analytic integrands. n = 2.
class SingularIntegral {
 public:
  explicit SingularIntegral(KernelSpec spec, int t_points_per_block = 64);

  const KernelSpec& spec() const { return spec_; }
  const StarSet& star() const { return star_; }

  // Polar quadrature of the truncated integral over |y| > eps.
  EvalResult direct(const Analytic& f, double eps, const Point& x) const;

  // One star average: t^{-n} int_{tS \ B(0,eps)} f(x-y) h sgn(Omega) dy.
  Complex average(const Analytic& f, double eps, double t, const Point& x) const;

  // Geometric-grid evaluation of n int_0^infty A_{eps,t} dt/t.
  RepResult rep(const Analytic& f, double eps, const Point& x,
                double tail_tol = 1e-6) const;

  // Truncation limit along eps = 2^{-j}, with the gradient-bound checks.
  PvLimitResult pv_limit(const Analytic& f, const Point& x, int j_max = 14) const;

  // Principal-value representation with the h(0) correction term. Needs
  // cancellation and a finite Dini integral.
  PvRepResult pv_rep(const Analytic& f, const Point& x,
                     double tail_tol = 1e-6) const;

 private:
  KernelSpec spec_;
  StarSet star_;
  int per_block_;

  double radial_end(const Analytic& f, const Point& x) const;
  double nonconv_factor(const Point& x, const Point& y) const;
};

// Grid-mode application of the truncated operator: discrete convolution of f
// with the kernel sampled at cell-center offsets (|y| > eps). This is the
// sampled-function path; no pointwise guarantee at a single node.
GridFunction apply_truncated_grid(const KernelSpec& spec, const GridFunction& f,
                                  double eps);

// Truncated and representation-formula values for the order-k commutator
// with field a; pv adds the multiplier term and requires the |alpha| = k
// moment cancellation of Omega.
class Commutator {
 public:
  Commutator(AngularKernel omega, LipschitzField a, int order);

  CommutatorResult truncated(const Analytic& f, double eps, const Point& x) const;
  CommutatorResult principal_value(const Analytic& f, const Point& x) const;

  // max |alpha|=k moment of Omega (vanishes for pv mode).
  double moment_defect() const;

 private:
  AngularKernel omega_;
  StarSet star_;
  LipschitzField a_;
  int order_;

  double field_quotient(const Point& x, const Point& dir, double r) const;
};

}  // namespace rsio
