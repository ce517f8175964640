#pragma once

#include <vector>

#include "roughsio/kernel.hpp"

namespace rsio {

// One stratum: the part of the star set where the radial profile lies in
// (2^{m-1}, 2^m] (m >= 1) or is <= 1 (m = 0).
struct Stratum {
  int m = 0;
  double measure = 0.0;        // Lebesgue measure of S_m
  double sphere_measure = 0.0; // surface measure of Theta_m
  std::vector<int> cells;      // kernel cells belonging to Theta_m
};

struct SetIntegrals {
  double measure = 0.0;            // (1/n) int |Omega|
  Complex sgn_integral;            // (1/n) int Omega
  double logp_integral = 0.0;      // int_S log+ |y| dy
  double log_integral = 0.0;       // int_S |log |y|| dy
  double weighted_strata_sum = 0.0;  // sum (m+1) |S_m|
  double logp_bound = 0.0;         // (1/n^2) ||Omega||_{LlogL}
  double log_bound = 0.0;          // (1/n^2)(||Omega||_{LlogL} + w_{n-1}/e)
  double strata_bound = 0.0;       // c_n ||Omega||_{LlogL}, c_n dimension-only
  double achieved_cn = 0.0;        // weighted_strata_sum / ||Omega||_{LlogL}
};

// The star-shaped set {x : |x| <= |Omega(x)|^{1/n}} built from a kernel's
// canonical cells, with its strata and cached measures. Membership uses the
// closed boundary convention; the strict variant differs on a measure-zero
// set only.
class StarSet {
 public:
  static StarSet build(const AngularKernel& kernel, int m_cap = 64);

  const AngularKernel& kernel() const { return kernel_; }
  int dim() const { return kernel_.dim(); }

  double cell_rho(int c) const { return rho_[c]; }
  int cell_stratum(int c) const { return stratum_of_cell_[c]; }
  double rho_max() const { return rho_max_; }
  double measure() const { return measure_; }
  const std::vector<Stratum>& strata() const { return strata_; }
  // Mass of cells beyond the stratum cap (0 unless the cap was hit).
  double residual_mass() const { return residual_mass_; }

  // Radial profile in the direction of y, from the canonical cells.
  double rho_of(const Point& y) const;
  // |y| / rho(y): y lies in tS exactly when this threshold is <= t.
  double dilation_threshold(const Point& y) const;

  // y in tS \ B(0, eps)? The origin belongs to tS for every t.
  bool member(const Point& y, double t, double eps = 0.0) const;

  // Both sides of the dilation identity: the t-integral of
  // t^{-n} 1_{tS \ B(0,eps)}(y) dt/t evaluated on a geometric grid with a
  // closed-form tail, and the closed form (1/n) 1_{|y|>eps} |Omega(y)|/|y|^n.
  std::pair<double, double> dilation_identity(const Point& y, double eps = 0.0) const;

  SetIntegrals set_integrals() const;

 private:
  AngularKernel kernel_;
  std::vector<double> rho_;
  std::vector<int> stratum_of_cell_;
  std::vector<Stratum> strata_;
  double rho_max_ = 0.0;
  double measure_ = 0.0;
  double residual_mass_ = 0.0;
};

}  // namespace rsio
