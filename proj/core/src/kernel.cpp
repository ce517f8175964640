#include "roughsio/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace rsio {

namespace {

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

}  // namespace

void AngularKernel::finalize2() {
  const std::size_t m = values_.size();
  measures_.resize(m);
  centers_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    measures_[i] = edges_[i + 1] - edges_[i];
    centers_[i] = direction2(0.5 * (edges_[i] + edges_[i + 1]));
  }
}

void AngularKernel::finalize3() {
  measures_.assign(static_cast<std::size_t>(nlat_) * nlon_, 0.0);
  centers_.resize(measures_.size());
  const double dphi = kTwoPi / nlon_;
  for (int i = 0; i < nlat_; ++i) {
    const double t0 = kPi * i / nlat_;
    const double t1 = kPi * (i + 1) / nlat_;
    const double band = (std::cos(t0) - std::cos(t1)) * dphi;
    const double tc = 0.5 * (t0 + t1);
    for (int j = 0; j < nlon_; ++j) {
      const std::size_t c = static_cast<std::size_t>(i) * nlon_ + j;
      measures_[c] = band;
      centers_[c] = direction3(tc, dphi * (j + 0.5));
    }
  }
}

AngularKernel AngularKernel::from_cells2(std::vector<double> edges,
                                         std::vector<Complex> values) {
  if (edges.size() != values.size() + 1 || values.empty())
    fail(ErrorKind::Config, "angular kernel: need cells+1 edges");
  if (std::abs(edges.front()) > 1e-12 || std::abs(edges.back() - kTwoPi) > 1e-12)
    fail(ErrorKind::Config, "angular kernel: edges must span [0, 2pi]");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1]))
      fail(ErrorKind::Config, "angular kernel: edges must increase");
  }
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorKind::Config, "angular kernel: non-finite cell value");
  }
  AngularKernel k;
  k.dim_ = 2;
  k.edges_ = std::move(edges);
  k.values_ = std::move(values);
  k.finalize2();
  return k;
}

AngularKernel AngularKernel::from_callable2(std::function<Complex(double)> fn,
                                            int resolution) {
  if (resolution < 4) fail(ErrorKind::Config, "angular kernel: resolution < 4");
  AngularKernel k;
  k.dim_ = 2;
  k.resolution_ = resolution;
  k.edges_.resize(resolution + 1);
  k.values_.resize(resolution);
  for (int i = 0; i <= resolution; ++i) k.edges_[i] = kTwoPi * i / resolution;
  for (int i = 0; i < resolution; ++i) {
    k.values_[i] = fn(kTwoPi * (i + 0.5) / resolution);
  }
  k.fn2_ = std::move(fn);
  k.finalize2();
  return k;
}

AngularKernel AngularKernel::from_callable3(
    std::function<Complex(const Point&)> fn, int nlat, int nlon) {
  if (nlat < 2 || nlon < 4) fail(ErrorKind::Config, "angular kernel: grid too coarse");
  AngularKernel k;
  k.dim_ = 3;
  k.nlat_ = nlat;
  k.nlon_ = nlon;
  k.finalize3();
  k.values_.resize(k.measures_.size());
  for (std::size_t c = 0; c < k.values_.size(); ++c) {
    k.values_[c] = fn(k.centers_[c]);
  }
  k.fn3_ = std::move(fn);
  return k;
}

AngularKernel AngularKernel::refined(int factor) const {
  if (dim_ == 2) {
    if (fn2_) return from_callable2(fn2_, resolution_ * factor);
    return *this;  // piecewise-constant cells are already exact
  }
  if (fn3_) return from_callable3(fn3_, nlat_ * factor, nlon_ * factor);
  return *this;
}

int AngularKernel::cell_of_angle2(double theta) const {
  const double t = wrap_angle(theta);
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
  int idx = static_cast<int>(it - edges_.begin()) - 1;
  idx = std::clamp(idx, 0, cell_count() - 1);
  return idx;
}

int AngularKernel::cell_of_direction(const Point& dir) const {
  if (dim_ == 2) return cell_of_angle2(planar_angle(dir));
  double polar = std::acos(std::clamp(dir.c[2], -1.0, 1.0));
  double az = std::atan2(dir.c[1], dir.c[0]);
  if (az < 0) az += kTwoPi;
  int i = std::clamp(static_cast<int>(polar / kPi * nlat_), 0, nlat_ - 1);
  int j = std::clamp(static_cast<int>(az / kTwoPi * nlon_), 0, nlon_ - 1);
  return i * nlon_ + j;
}

Complex AngularKernel::eval(const Point& x) const {
  if (norm(x) == 0.0) fail(ErrorKind::Domain, "kernel evaluation at x = 0");
  const Point d = normalized(x);
  if (dim_ == 2 && fn2_) return fn2_(planar_angle(d));
  if (dim_ == 3 && fn3_) return fn3_(d);
  return values_[cell_of_direction(d)];
}

double AngularKernel::radial_profile(const Point& x) const {
  return std::pow(std::abs(eval(x)), 1.0 / dim_);
}

double AngularKernel::l1_norm() const {
  double s = 0;
  for (int c = 0; c < cell_count(); ++c) s += std::abs(values_[c]) * measures_[c];
  return s;
}

double AngularKernel::llogl_norm() const {
  auto sum = [](const AngularKernel& k) {
    double s = 0;
    for (int c = 0; c < k.cell_count(); ++c) {
      const double a = std::abs(k.values_[c]);
      s += a * (1.0 + logp(a)) * k.measures_[c];
    }
    return s;
  };
  const double v = sum(*this);
  if (callable_backed()) {
    const double v2 = sum(refined(2));
    if (std::abs(v2 - v) > 0.01 * std::abs(v2))
      fail(ErrorKind::NonConvergence,
           "llogl_norm: refinement changed the value by more than 1%");
    return v2;
  }
  return v;
}

Complex AngularKernel::cancellation() const {
  Complex s{0, 0};
  for (int c = 0; c < cell_count(); ++c) s += values_[c] * measures_[c];
  return s;
}

Complex AngularKernel::pv_correction_constant() const {
  Complex s{0, 0};
  for (int c = 0; c < cell_count(); ++c) {
    const double a = std::abs(values_[c]);
    if (a > 0) s += values_[c] * std::log(a) * measures_[c];
  }
  return s / static_cast<double>(dim_);
}

double RadialFactor::raw(double r) const {
  switch (kind) {
    case RadialKind::Constant:
      return param;
    case RadialKind::Power:
      return std::pow(r, -param);
    case RadialKind::OnePlusR:
      return 1.0 + r;
    case RadialKind::OnePlusSqrt:
      return 1.0 + std::sqrt(r);
    case RadialKind::SinLog:
      return 2.0 + std::sin(std::log(r));
    case RadialKind::SqrtLog:
      return r < 1.0 ? std::sqrt(std::log(1.0 / r)) : 0.0;
    case RadialKind::Custom:
      return custom(r);
  }
  return 0.0;
}

RadialFactor make_radial(RadialKind kind, double param, double sigma) {
  RadialFactor h;
  h.kind = kind;
  h.param = param;
  h.sigma = sigma;
  switch (kind) {
    case RadialKind::Constant:
      h.class_constant = std::pow(std::abs(param), sigma);
      h.h0 = param;
      h.name = "constant";
      break;
    case RadialKind::Power:
      h.class_constant = 0.0;  // not in the class for param > 0
      h.name = "power";
      break;
    case RadialKind::OnePlusR:
      h.h0 = 1.0;
      h.name = "one_plus_r";
      break;
    case RadialKind::OnePlusSqrt:
      h.h0 = 1.0;
      h.name = "one_plus_sqrt";
      break;
    case RadialKind::SinLog:
      h.class_constant = std::pow(3.0, sigma);
      h.name = "sin_log";
      break;
    case RadialKind::SqrtLog:
      h.h0 = std::numeric_limits<double>::infinity();
      h.name = "sqrt_log";
      break;
    case RadialKind::Custom:
      h.name = "custom";
      break;
  }
  return h;
}

HClassEstimate hclass_estimate(const std::function<double(double)>& h,
                               double sigma, int j_min, int j_max,
                               double growth_tol) {
  if (j_min >= j_max) fail(ErrorKind::Domain, "hclass_estimate: j_min >= j_max");
  HClassEstimate e;
  auto hs = [&](double r) {
    const double v = h(r);
    if (!std::isfinite(v)) fail(ErrorKind::Domain, "hclass_estimate: h not evaluable");
    return std::pow(std::abs(v), sigma);
  };
  std::vector<double> zero_form(j_max - j_min + 1, 0.0);
  double running_zero = 0.0;
  {
    // int_0^{2^{j_min}} |h|^sigma, geometric blocks toward 0.
    bool div = false;
    running_zero = integrate_to_zero(hs, std::ldexp(1.0, j_min), 1e-10, &div, 400);
    if (div) running_zero = std::numeric_limits<double>::infinity();
  }
  for (int j = j_min; j <= j_max; ++j) {
    const double R = std::ldexp(1.0, j);
    const double block = adaptive_simpson(hs, R, 2.0 * R, 1e-12 * R, 44);
    e.exponents.push_back(j);
    e.dyadic_estimates.push_back(block / R);
    e.c_dyadic = std::max(e.c_dyadic, block / R);
    e.c_logform = std::max(e.c_logform, adaptive_simpson(
        [&](double r) { return hs(r) / r; }, R, 2.0 * R, 1e-12, 44));
    running_zero += block;
    zero_form[j - j_min] = running_zero / (2.0 * R);
    e.c_zero = std::max(e.c_zero, zero_form[j - j_min]);
  }
  // Growth-trend fit over the 8 outermost probes at each end.
  const int tail = std::min<int>(8, static_cast<int>(e.exponents.size()));
  std::vector<double> xs, ys;
  for (int i = 0; i < tail; ++i) {
    xs.push_back(-e.exponents[i]);  // toward R -> 0
    ys.push_back(e.dyadic_estimates[i]);
  }
  e.growth_low = fit_log2_slope(xs, ys);
  xs.clear();
  ys.clear();
  const int nprobe = static_cast<int>(e.exponents.size());
  for (int i = nprobe - tail; i < nprobe; ++i) {
    xs.push_back(e.exponents[i]);
    ys.push_back(e.dyadic_estimates[i]);
  }
  e.growth_high = fit_log2_slope(xs, ys);
  e.rejected = e.growth_low > growth_tol || e.growth_high > growth_tol ||
               !std::isfinite(e.c_zero);
  return e;
}

DiniResult dini_integral(const RadialFactor& h) {
  if (!h.h0.has_value())
    fail(ErrorKind::Config, "dini_integral: h(0) not declared");
  DiniResult res;
  if (!std::isfinite(*h.h0)) {
    res.finite = false;
    res.value = std::numeric_limits<double>::infinity();
    return res;
  }
  const double h0 = *h.h0;
  bool diverged = false;
  res.value = integrate_to_zero(
      [&](double t) { return std::abs(h(t) - h0) / t; }, 1.0, 1e-9, &diverged, 600);
  if (diverged) {
    res.finite = false;
    res.value = std::numeric_limits<double>::infinity();
  }
  return res;
}

double dini_integral_upto(const RadialFactor& h, double b) {
  if (!h.h0.has_value() || !std::isfinite(*h.h0))
    fail(ErrorKind::Config, "dini_integral_upto: h(0) not declared");
  const double h0 = *h.h0;
  bool diverged = false;
  double v = integrate_to_zero(
      [&](double t) { return std::abs(h(t) - h0) / t; }, std::min(b, 1.0), 1e-9,
      &diverged, 600);
  return diverged ? std::numeric_limits<double>::infinity() : v;
}

AngularKernel catalogue_kernel(const std::string& id, double param,
                               int resolution) {
  if (id == "constant") {
    const double c = param == 0.0 ? 1.0 : param;
    return AngularKernel::from_cells2({0.0, kTwoPi}, {Complex{c, 0}});
  }
  if (id == "cos") {
    return AngularKernel::from_callable2(
        [](double t) { return Complex{std::cos(t), 0}; }, resolution);
  }
  if (id == "cos2") {
    return AngularKernel::from_callable2(
        [](double t) { return Complex{std::cos(2 * t), 0}; }, resolution);
  }
  if (id == "sign_cos2") {
    // Exact cells: +1 on |cos 2t| > 0 quadrant pattern, edges at odd pi/4.
    std::vector<double> edges{0.0};
    std::vector<Complex> vals;
    double sign = 1.0;
    for (int k = 0; k < 4; ++k) {
      edges.push_back(kPi / 4 + k * kPi / 2);
      vals.emplace_back(sign, 0.0);
      sign = -sign;
    }
    edges.push_back(kTwoPi);
    vals.emplace_back(1.0, 0.0);
    return AngularKernel::from_cells2(std::move(edges), std::move(vals));
  }
  if (id == "sign_split") {
    return AngularKernel::from_cells2({0.0, kPi, kTwoPi},
                                      {Complex{1, 0}, Complex{-1, 0}});
  }
  if (id == "sin_power") {
    const double a = param == 0.0 ? 0.5 : param;
    if (a <= 0.0 || a >= 1.0)
      fail(ErrorKind::Config, "sin_power: exponent must lie in (0,1)");
    return AngularKernel::from_callable2(
        [a](double t) {
          const double s = std::abs(std::sin(t));
          return Complex{std::pow(s, -a), 0};
        },
        resolution);
  }
  if (id == "two_value") {
    // 2 on an arc of length pi/2, -2/3 on the complementary arc; the sphere
    // integral vanishes: 2 (pi/2) = (2/3)(3 pi/2).
    return AngularKernel::from_cells2({0.0, kPi / 2, kTwoPi},
                                      {Complex{2, 0}, Complex{-2.0 / 3.0, 0}});
  }
  if (id == "arc_geometric") {
    const int K = param <= 0 ? 8 : static_cast<int>(param);
    std::vector<std::pair<std::pair<double, double>, Complex>> arcs;
    for (int k = 1; k <= K; ++k) {
      const double hi = std::ldexp(1.0, -3 * k);
      const double lo = hi - std::ldexp(1.0, -5 * k);
      arcs.push_back({{lo, hi}, Complex{std::ldexp(1.0, 2 * k), 0}});
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const auto& a, const auto& b) { return a.first.first < b.first.first; });
    std::vector<double> edges{0.0};
    std::vector<Complex> vals;
    for (const auto& [ab, v] : arcs) {
      if (ab.first > edges.back()) {
        vals.emplace_back(0, 0);
        edges.push_back(ab.first);
      }
      vals.push_back(v);
      edges.push_back(ab.second);
    }
    if (edges.back() < kTwoPi) {
      vals.emplace_back(0, 0);
      edges.push_back(kTwoPi);
    }
    return AngularKernel::from_cells2(std::move(edges), std::move(vals));
  }
  fail(ErrorKind::Config, "unknown catalogue kernel id: " + id);
}

}  // namespace rsio
