#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "roughsio/geometry.hpp"
#include "roughsio/quadrature.hpp"

namespace rsio {

using Complex = std::complex<double>;

inline Complex csgn(const Complex& z) {
  const double a = std::abs(z);
  return a == 0.0 ? Complex{0.0, 0.0} : z / a;
}

// Degree-0 homogeneous angular kernel. Canonical form is piecewise constant
// on a partition of the sphere: arcs for n=2, a lat-long grid for n=3.
// Callable-backed kernels are resampled onto the partition at construction;
// the callable is kept so that pointwise evaluation stays exact and
// refinement checks can re-resample.
class AngularKernel {
 public:
  static AngularKernel from_cells2(std::vector<double> edges,
                                   std::vector<Complex> values);
  static AngularKernel from_callable2(std::function<Complex(double)> fn,
                                      int resolution = 4096);
  static AngularKernel from_callable3(
      std::function<Complex(const Point&)> fn, int nlat = 128, int nlon = 256);

  int dim() const { return dim_; }
  int cell_count() const { return static_cast<int>(values_.size()); }
  const std::vector<Complex>& values() const { return values_; }

  Complex cell_value(int c) const { return values_[c]; }
  double cell_measure(int c) const { return measures_[c]; }
  Point cell_center(int c) const { return centers_[c]; }
  int cell_of_direction(const Point& dir) const;
  int cell_of_angle2(double theta) const;

  // Evaluation routes through x/|x| (degree-0 homogeneity is structural).
  Complex eval(const Point& x) const;
  // |Omega(x/|x|)|^{1/n}.
  double radial_profile(const Point& x) const;

  // Integral of |Omega| (1 + log+ |Omega|) over the sphere; callable-backed
  // kernels must pass a 2x refinement gate (< 1% relative change).
  double llogl_norm() const;
  double l1_norm() const;
  // Integral of Omega over the sphere.
  Complex cancellation() const;
  bool has_cancellation(double tol = 1e-8) const {
    return std::abs(cancellation()) <= tol;
  }
  // (1/n) * integral of Omega log|Omega| (zero cells contribute zero).
  Complex pv_correction_constant() const;

  // Fresh kernel resampled at a multiple of the current resolution
  // (callable-backed kernels only).
  AngularKernel refined(int factor = 2) const;
  bool callable_backed() const { return static_cast<bool>(fn2_) || static_cast<bool>(fn3_); }

  const std::vector<double>& edges2() const { return edges_; }

 private:
  int dim_ = 2;
  // n=2: partition edges (size m+1, spanning [0, 2pi]); n=3: lat-long grid.
  std::vector<double> edges_;
  int nlat_ = 0, nlon_ = 0;
  std::vector<Complex> values_;
  std::vector<double> measures_;
  std::vector<Point> centers_;
  std::function<Complex(double)> fn2_;
  std::function<Complex(const Point&)> fn3_;
  int resolution_ = 0;

  void finalize2();
  void finalize3();
};

enum class RadialKind {
  Constant,    // h = c
  Power,       // h = r^{-beta}
  OnePlusR,    // h = 1 + r
  OnePlusSqrt, // h = 1 + sqrt(r)
  SinLog,      // h = 2 + sin(log r)
  SqrtLog,     // h = sqrt(log(1/r)) for r < 1, else 0
  Custom,
};

// Radial factor h on (0, infinity) with its class metadata. A truncation
// radius eps > 0 forces h = 0 on (0, eps].
struct RadialFactor {
  RadialKind kind = RadialKind::Constant;
  double param = 1.0;
  double sigma = 1.0;          // class exponent the factor is declared for
  double class_constant = 1.0; // declared/estimated C_h for that sigma
  double eps = 0.0;            // truncation radius (0 = none)
  std::optional<double> h0;    // value at 0, needed by the Dini integral
  std::function<double(double)> custom;
  std::string name;

  double operator()(double r) const {
    if (r <= eps) return 0.0;
    return raw(r);
  }
  double raw(double r) const;

  RadialFactor truncated(double new_eps) const {
    RadialFactor t = *this;
    t.eps = std::max(eps, new_eps);
    return t;
  }
};

RadialFactor make_radial(RadialKind kind, double param = 1.0,
                         double sigma = 1.0);

// Dyadic-average class estimate for |h|^sigma: sup over R = 2^j,
// j in [j_min, j_max] of R^{-1} int_R^{2R} |h|^sigma dr, together with the
// equivalent sup R^{-1} int_0^R |h|^sigma and sup int_R^{2R} |h|^sigma dr/r
// forms and a growth-trend rejection flag at both endpoints.
struct HClassEstimate {
  double c_dyadic = 0.0;   // form (a)
  double c_zero = 0.0;     // form (b)
  double c_logform = 0.0;  // form (c)
  double growth_low = 0.0;  // fitted growth exponent toward R -> 0
  double growth_high = 0.0; // fitted growth exponent toward R -> infinity
  bool rejected = false;
  std::vector<double> dyadic_estimates;  // per probed j, form (a)
  std::vector<int> exponents;            // probed j values
};

HClassEstimate hclass_estimate(const std::function<double(double)>& h,
                               double sigma, int j_min = -30, int j_max = 30,
                               double growth_tol = 0.05);
inline HClassEstimate hclass_estimate(const RadialFactor& h, double sigma,
                                      int j_min = -30, int j_max = 30) {
  return hclass_estimate([&h](double r) { return h(r); }, sigma, j_min, j_max);
}

// int_0^1 |h(t) - h(0)| dt/t on a geometric grid; +infinity when the dyadic
// contributions near 0 do not decay.
struct DiniResult {
  double value = 0.0;
  bool finite = true;
};
DiniResult dini_integral(const RadialFactor& h);

// Partial Dini integral over (0, b].
double dini_integral_upto(const RadialFactor& h, double b);

// Kernel + radial factor (+ optional bounded non-convolution factor).
struct KernelSpec {
  AngularKernel omega;
  RadialFactor h;
  std::function<double(const Point&, const Point&)> nonconv;  // k(x, y)
  double nonconv_bound = 1.0;
  std::string name;

  bool has_nonconv() const { return static_cast<bool>(nonconv); }
};

// Built-in angular kernel catalogue. Known ids:
//   constant(c)    — Omega = c
//   cos            — Omega(theta) = cos theta
//   cos2           — Omega(theta) = cos 2theta
//   sign_cos2      — Omega(theta) = sgn(cos 2theta)
//   sign_split     — +1 on [0,pi), -1 on [pi,2pi)
//   sin_power(a)   — Omega(theta) = |sin theta|^{-a}, 0 < a < 1
//   two_value      — 2 on an arc of length pi/2, -2/3 on the rest
//   arc_geometric(K) — sum over k<=K of 2^{2k} on arcs [2^{-3k}-2^{-5k}, 2^{-3k}]
AngularKernel catalogue_kernel(const std::string& id, double param = 0.0,
                               int resolution = 4096);

}  // namespace rsio
