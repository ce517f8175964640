#pragma once

#include <map>
#include <optional>
#include <string>

#include "roughsio/maximal.hpp"
#include "roughsio/operators.hpp"

namespace rsio {

struct Tolerances {
  double identity_rel = 1e-6;   // identity checks, relative
  double cross_scale = 1e-3;    // cross-method operator checks, of scale
  double trend_slope = 0.05;    // flat-trend threshold on fitted slopes
  double cauchy_block = 0.01;   // last dyadic block vs total
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  int kernel_resolution = 1024;  // callable kernels in the suite
  std::vector<std::string> kernel_ids{"constant",    "const_e",  "cos",
                                      "two_value",   "sin_half", "arc_geometric",
                                      "sign_cos2"};
  double p = 2.0;
  double r = 1.5;
  double sigma = 2.0;
  std::vector<double> eps_list{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  double grid_extent = 3.0;
  int grid_res = 28;
  Tolerances tol;
};

struct Check {
  std::string id;
  std::string statement;   // the identity or bound being verified
  double computed = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool probe = false;      // probes report evidence, they do not gate
};

struct Report {
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  int total() const { return static_cast<int>(checks.size()); }
  int failed_gating() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.probe && !c.pass) ++n;
    return n;
  }
  int failed_any() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }
};

// Named catalogue entries assembled from the config.
struct Catalogue {
  std::vector<std::pair<std::string, AngularKernel>> kernels;
  std::vector<std::pair<std::string, RadialFactor>> factors;  // admissible
  RadialFactor rejected_factor;  // r^{-1/2}: the known non-member
  std::vector<std::pair<std::string, Weight>> weights;        // certified-range
  Weight negative_weight;  // exp(x1): grows along long rectangles
  std::vector<TestFunction> test_functions;

  static Catalogue standard(const SuiteConfig& cfg);
};

// Integral identities and bounds on the whole catalogue (dyadic log bound,
// dilation identity, the five star-set relations, the class-equivalence
// constants, the vanishing-near-zero bounds, the star-shaped-set bound).
Report identity_suite(const SuiteConfig& cfg);

// Uniform-boundedness probe: ||T_eps f||_{p,w}/||f||_{p,w} across the eps
// list must show no trend for certified (kernel, weight) pairs; the
// no-cancellation control must be flagged. Refuses uncertified weights.
Report boundedness_probe(const SuiteConfig& cfg);

// Truncation-difference bound: sup-grid |T_eps1 f - T_eps2 f| against
// ||Omega||_1 ||grad f||_inf int_eps2^eps1 |h|.
Report convergence_probe(const SuiteConfig& cfg);

// Everything, plus cover/weight/maximal/operator cross-checks. When out_dir
// is set, writes report.json and the CSV bundle there.
Report run_all(const SuiteConfig& cfg,
               const std::optional<std::string>& out_dir = std::nullopt);

}  // namespace rsio
