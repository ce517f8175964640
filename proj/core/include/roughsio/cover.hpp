#pragma once

#include <map>
#include <optional>
#include <vector>

#include "roughsio/starset.hpp"

namespace rsio {

struct CoverRectangle {
  int m = 0;
  int k = 0;
  Rectangle rect;
  double cap_center = 0.0;     // n=2: cap center angle
  double cap_half_angle = 0.0; // half-angle after enlargement
};

// Origin-centered rectangles grouped by stratum, covering each S_m with
// total measure comparable to |S_m| and longest side comparable to 2^m.
struct StratifiedCover {
  std::vector<CoverRectangle> rects;
  double beta_cover = 0.0;  // sup_m (cap measure) / |Theta_m|
  double achieved_cn = 0.0; // sup_m sum_k |R_{m,k}| / |S_m|
  double gamma = 0.0;       // sup longest side / 2^m

  std::vector<const CoverRectangle*> stratum(int m) const;
  std::vector<int> strata_present() const;
};

struct BuildCoverOptions {
  int m_max = 64;
  double enlarge_fraction = 0.10;  // widen each cap by this much per side
  std::size_t max_rectangles = 1000000;
};

StratifiedCover build_cover(const StarSet& star,
                            const BuildCoverOptions& opts = {});

struct CoverReport {
  double gamma = 0.0;
  double achieved_cn = 0.0;
  double coverage_miss_rate = 0.0;          // overall
  std::map<int, double> miss_rate_by_m;
  std::map<int, double> measure_ratio_by_m; // sum |R_{m,k}| / |S_m|
};

CoverReport verify_cover(const StratifiedCover& cover, const StarSet& star,
                         int samples_per_stratum = 10000,
                         std::uint64_t seed = 1,
                         double boundary_guard = 1e-9);

// Kernel factor for rectangle/ball conditions: |h(|y|)|, |Omega(y)|, or a
// general nonnegative H(x, y).
struct HFactor {
  enum class Kind { One, Radial, Homogeneous, Custom } kind = Kind::One;
  RadialFactor h;
  const AngularKernel* omega = nullptr;
  std::function<double(const Point&, const Point&)> custom;

  static HFactor one() { return HFactor{}; }
  static HFactor radial(RadialFactor hf) {
    HFactor f;
    f.kind = Kind::Radial;
    f.h = std::move(hf);
    return f;
  }
  static HFactor homogeneous(const AngularKernel* k) {
    HFactor f;
    f.kind = Kind::Homogeneous;
    f.omega = k;
    return f;
  }
  double eval(const Point& x, const Point& y) const;
  bool x_dependent() const { return kind == Kind::Custom; }
};

// sup over rectangles and probed dilations t of |tR|^{-1} int_{tR} H^sigma,
// with a growth-trend failure flag across the rectangle list order.
struct HRectReport {
  double constant = 0.0;
  double growth_slope = 0.0;
  bool failed = false;
  std::vector<double> per_rect_sup;  // sup over t, per rectangle
};

HRectReport hrect_check(const HFactor& H, const std::vector<CoverRectangle>& rects,
                        double sigma, int t_jmin = -6, int t_jmax = 6,
                        double growth_tol = 0.05);

// The explicit rectangle family R_j = [-2^j, 2^j] x [-2^{-2j}, 2^{-2j}],
// j = 0..j_max, indexed with m = j so it can flow through the stratified
// machinery.
std::vector<CoverRectangle> geometric_arm_family(int j_max);

// Sampled translates and dilates of a base rectangle: a 5x5(x5) grid of
// center offsets up to +-4 half-extents and dyadic scales 2^j, |j| <= 8.
std::vector<Box> sample_translates_dilates(const Rectangle& base,
                                           int offsets_per_axis = 5,
                                           double offset_span = 4.0,
                                           int dilation_jmax = 8);

}  // namespace rsio
