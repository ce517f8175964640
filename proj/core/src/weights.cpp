#include "roughsio/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rsio {

double Weight::eval(const Point& x) const {
  switch (family) {
    case Family::Constant:
      return value;
    case Family::Power:
      return std::pow(norm(x), alpha);
    case Family::Exp:
      return std::exp(dot(exp_dir, x));
    case Family::Custom:
      return custom(x);
  }
  return 1.0;
}

Weight Weight::powered(double s) const {
  Weight out = *this;
  switch (family) {
    case Family::Constant:
      out.value = std::pow(value, s);
      break;
    case Family::Power:
      out.alpha = alpha * s;
      break;
    case Family::Exp:
      out.exp_dir = s * exp_dir;
      break;
    case Family::Custom: {
      auto base = custom;
      out.custom = [base, s](const Point& x) { return std::pow(base(x), s); };
      break;
    }
  }
  return out;
}

Weight Weight::constant(double c) {
  Weight w;
  w.family = Family::Constant;
  w.value = c;
  w.name = "constant";
  return w;
}

Weight Weight::power(double alpha) {
  Weight w;
  w.family = Family::Power;
  w.alpha = alpha;
  w.name = "power";
  return w;
}

Weight Weight::exponential(const Point& dir) {
  Weight w;
  w.family = Family::Exp;
  w.exp_dir = dir;
  w.name = "exp";
  return w;
}

Weight Weight::custom_fn(std::function<double(const Point&)> fn,
                         const std::string& name) {
  Weight w;
  w.family = Family::Custom;
  w.custom = std::move(fn);
  w.name = name;
  return w;
}

Weight dual_weight(const Weight& w, double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    fail(ErrorKind::Domain, "dual_weight: need 1 < p < infinity");
  return w.powered(-dual_exponent(p) / p);
}

namespace {

std::string region_desc(const Box& box) {
  std::ostringstream os;
  os << "box(center=(" << box.center.c[0] << "," << box.center.c[1]
     << "), scale=" << box.scale << ")";
  return os.str();
}

// int_R |x|^beta over an oriented planar box via the divergence identity
// div(x |x|^beta) = (beta + 2) |x|^beta: reduces to four edge integrals of
// |x|^beta (x . nhat). Valid for beta > -2; edges through the origin
// contribute zero because x . nhat vanishes there.
double power_integral_2d(double beta, const Box& box) {
  if (beta == 0.0) return box.volume();
  const Rectangle r = box.base.dilated(box.scale);
  double total = 0.0;
  for (int axis = 0; axis < 2; ++axis) {
    for (int side = -1; side <= 1; side += 2) {
      const Point nhat = static_cast<double>(side) * r.axes[axis];
      const Point mid = box.center + (side * r.half[axis]) * r.axes[axis];
      const Point tang = r.axes[1 - axis];
      const double half = r.half[1 - axis];
      const double plane_dist = dot(mid, nhat);  // x . nhat constant on edge
      if (plane_dist == 0.0) continue;
      // Force a node at the closest point to the origin along the edge.
      const double s_closest = std::clamp(-dot(mid, tang), -half, half);
      auto f = [&](double s) {
        const Point x = mid + s * tang;
        return std::pow(norm(x), beta) * plane_dist;
      };
      total += adaptive_simpson_split(f, -half, half, {s_closest},
                                      1e-12 * (1.0 + std::abs(plane_dist)) * half,
                                      48);
    }
  }
  return total / (beta + 2.0);
}

// Closed-form integral of exp(d . x) over an oriented box.
double exp_integral_2d(const Point& d, const Box& box) {
  const Rectangle r = box.base.dilated(box.scale);
  double total = std::exp(dot(d, box.center));
  for (int axis = 0; axis < 2; ++axis) {
    const double a = dot(d, r.axes[axis]);
    const double h = r.half[axis];
    total *= (std::abs(a) < 1e-12) ? 2.0 * h : 2.0 * std::sinh(a * h) / a;
  }
  return total;
}

// Adaptive tensor quadrature for custom weights, with origin-centered
// subdivision when the box straddles the origin.
double generic_integral_2d(const std::function<double(const Point&)>& f,
                           const Box& box, double rel_tol, int depth = 0);

double tensor_gauss(const std::function<double(const Point&)>& f, const Box& box) {
  static const double xs[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
  static const double ws[4] = {0.3478548451374538, 0.6521451548625461,
                               0.6521451548625461, 0.3478548451374538};
  const Rectangle r = box.base.dilated(box.scale);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Point x = box.center + (xs[i] * r.half[0]) * r.axes[0] +
                      (xs[j] * r.half[1]) * r.axes[1];
      s += ws[i] * ws[j] * f(x);
    }
  }
  return s * r.half[0] * r.half[1];
}

double generic_integral_2d(const std::function<double(const Point&)>& f,
                           const Box& box, double rel_tol, int depth) {
  const double coarse = tensor_gauss(f, box);
  double fine = 0.0;
  const Rectangle r = box.base.dilated(box.scale);
  for (int i = -1; i <= 1; i += 2) {
    for (int j = -1; j <= 1; j += 2) {
      Box sub;
      sub.base = box.base;
      sub.scale = box.scale * 0.5;
      sub.center = box.center + (i * 0.5 * r.half[0]) * r.axes[0] +
                   (j * 0.5 * r.half[1]) * r.axes[1];
      fine += tensor_gauss(f, sub);
    }
  }
  if (std::abs(fine - coarse) <= rel_tol * (std::abs(fine) + 1e-300) || depth > 22) {
    if (depth > 22 && std::abs(fine - coarse) > 64 * rel_tol * (std::abs(fine) + 1e-300))
      fail(ErrorKind::NonConvergence, "avg: quadrature did not settle");
    return fine;
  }
  double s = 0.0;
  for (int i = -1; i <= 1; i += 2) {
    for (int j = -1; j <= 1; j += 2) {
      Box sub;
      sub.base = box.base;
      sub.scale = box.scale * 0.5;
      sub.center = box.center + (i * 0.5 * r.half[0]) * r.axes[0] +
                   (j * 0.5 * r.half[1]) * r.axes[1];
      s += generic_integral_2d(f, sub, rel_tol * 0.7, depth + 1);
    }
  }
  return s;
}

}  // namespace

AvgResult avg(const Weight& w, const Box& region, double power) {
  AvgResult out;
  const Weight eff = w.powered(power);
  const double vol = region.volume();
  if (!(vol > 0)) fail(ErrorKind::Domain, "avg: degenerate region");
  if (region.base.dim != 2)
    fail(ErrorKind::Domain, "avg: weight averages implemented for n = 2");
  switch (eff.family) {
    case Weight::Family::Constant:
      out.value = eff.value;
      return out;
    case Weight::Family::Power: {
      const double beta = eff.alpha;
      if (beta <= -2.0) {
        // |x|^beta is non-integrable at the origin; divergent if the closed
        // region reaches it.
        const Rectangle r = region.base.dilated(region.scale);
        Point origin = point2(0, 0);
        if (r.contains(origin - region.center, 1e-12)) {
          out.divergent = true;
          out.value = std::numeric_limits<double>::infinity();
          return out;
        }
      }
      out.value = power_integral_2d(beta, region) / vol;
      return out;
    }
    case Weight::Family::Exp:
      out.value = exp_integral_2d(eff.exp_dir, region) / vol;
      if (!std::isfinite(out.value)) out.divergent = true;
      return out;
    case Weight::Family::Custom: {
      try {
        out.value =
            generic_integral_2d([&](const Point& x) { return eff.eval(x); },
                                region, 5e-9) /
            vol;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonConvergence)
          fail(ErrorKind::NonConvergence,
               std::string(e.what()) + " at " + region_desc(region));
        throw;
      }
      if (!std::isfinite(out.value)) out.divergent = true;
      return out;
    }
  }
  return out;
}

double avg_value(const Weight& w, const Box& region, double power) {
  const AvgResult r = avg(w, region, power);
  if (r.divergent)
    fail(ErrorKind::Domain, "avg: divergent average on " + region_desc(region));
  return r.value;
}

std::vector<Box> sample_cubes(int n, double span, int centers_per_axis, int jmax) {
  if (n != 2) fail(ErrorKind::Domain, "sample_cubes: n = 2 only");
  std::vector<Box> cubes;
  std::vector<double> cs;
  for (int i = 0; i < centers_per_axis; ++i)
    cs.push_back(span * (2.0 * i / (centers_per_axis - 1) - 1.0));
  cs.push_back(0.0);
  for (int j = -jmax; j <= jmax; ++j) {
    const double side = std::ldexp(1.0, j);
    for (double cx : cs) {
      for (double cy : cs) {
        Box b;
        b.base = Rectangle::axis_aligned2(0.5, 0.5);
        b.scale = side;
        b.center = point2(cx, cy);
        cubes.push_back(b);
      }
    }
  }
  return cubes;
}

TwoAverageResult two_average(const Weight& w, double p, double r, const Box& box,
                             RectMode mode) {
  TwoAverageResult out;
  const double pp = dual_exponent(p);
  AvgResult a, b;
  switch (mode) {
    case RectMode::Ca:
      a = avg(w, box, 1.0);
      b = avg(w, box, -r * pp / p);
      if (a.divergent || b.divergent) {
        out.divergent = true;
        return out;
      }
      out.value = std::pow(a.value, 1.0 / p) * std::pow(b.value, 1.0 / (r * pp));
      return out;
    case RectMode::Cb:
      a = avg(w, box, r);
      b = avg(w, box, -pp / p);
      if (a.divergent || b.divergent) {
        out.divergent = true;
        return out;
      }
      out.value = std::pow(a.value, 1.0 / (r * p)) * std::pow(b.value, 1.0 / pp);
      return out;
    case RectMode::Aunif:
      a = avg(w, box, 1.0);
      b = avg(w, box, -pp / p);
      if (a.divergent || b.divergent) {
        out.divergent = true;
        return out;
      }
      out.value = std::pow(a.value, 1.0 / p) * std::pow(b.value, 1.0 / pp);
      return out;
    case RectMode::B2:
      a = avg(w, box, 1.0);
      b = avg(w, box, -1.0);
      if (a.divergent || b.divergent) {
        out.divergent = true;
        return out;
      }
      out.value = std::sqrt(a.value) * std::sqrt(b.value);
      return out;
  }
  return out;
}

namespace {

ApEstimate cube_estimate(const Weight& w, double p, double r,
                         const std::vector<Box>& cubes, bool bumped) {
  ApEstimate est;
  est.cubes_probed = static_cast<int>(cubes.size());
  for (const auto& q : cubes) {
    const TwoAverageResult t =
        two_average(w, p, r, q, bumped ? RectMode::Ca : RectMode::Aunif);
    if (t.divergent) {
      est.in_class = false;
      est.constant = std::numeric_limits<double>::infinity();
      return est;
    }
    est.constant = std::max(est.constant, t.value);
  }
  return est;
}

}  // namespace

ApEstimate ap_constant(const Weight& w, double p, const std::vector<Box>& cubes) {
  if (!(p > 1.0)) fail(ErrorKind::Domain, "ap_constant: p in (1, infinity)");
  return cube_estimate(w, p, 1.0, cubes, false);
}

ApEstimate apr_constant(const Weight& w, double p, double r,
                        const std::vector<Box>& cubes) {
  if (!(p > 1.0)) fail(ErrorKind::Domain, "apr_constant: p in (1, infinity)");
  if (!(r > 1.0)) fail(ErrorKind::Domain, "apr_constant: r > 1");
  return cube_estimate(w, p, r, cubes, true);
}

RectConditionReport rect_condition(const Weight& w, double p, double r,
                                   const std::vector<CoverRectangle>& rects,
                                   RectMode mode, bool finite_family,
                                   double cauchy_block_tol, double decay_fit_tol) {
  switch (mode) {
    case RectMode::Ca:
      if (!(p > 1.0 && p <= 2.0))
        fail(ErrorKind::Domain, "rect_condition mode Ca needs 1 < p <= 2");
      if (!(r > 1.0)) fail(ErrorKind::Domain, "rect_condition mode Ca needs r > 1");
      break;
    case RectMode::Cb:
      if (!(p >= 2.0)) fail(ErrorKind::Domain, "rect_condition mode Cb needs p >= 2");
      if (!(r > 1.0)) fail(ErrorKind::Domain, "rect_condition mode Cb needs r > 1");
      break;
    case RectMode::Aunif:
      if (!(p > 1.0)) fail(ErrorKind::Domain, "rect_condition needs p > 1");
      break;
    case RectMode::B2:
      p = 2.0;
      r = 1.0;
      break;
  }
  RectConditionReport rep;
  rep.mode = mode;
  rep.p = p;
  rep.r = r;
  rep.finite_family = finite_family;
  rep.entries.resize(rects.size());
  parallel_for(rects.size(), [&](std::size_t i) {
    const auto boxes = sample_translates_dilates(rects[i].rect);
    RectEntry e;
    e.m = rects[i].m;
    e.k = rects[i].k;
    double sup = 0.0;
    for (const auto& b : boxes) {
      const TwoAverageResult t = two_average(w, p, r, b, mode);
      if (t.divergent) {
        e.divergent = true;
        break;
      }
      sup = std::max(sup, t.value);
    }
    e.K = mode == RectMode::Aunif ? sup : sup * rects[i].rect.volume();
    rep.entries[i] = e;
  });

  std::map<int, double> block;
  for (const auto& e : rep.entries) {
    if (e.divergent) rep.any_divergent = true;
    rep.uniform_sup = std::max(rep.uniform_sup, e.K);
    block[e.m] += (e.m + 1) * e.K;
  }
  double total = 0.0;
  std::vector<double> ms, blocks;
  for (const auto& [m, v] : block) {
    total += v;
    rep.partial_sums.push_back(total);
    ms.push_back(m);
    blocks.push_back(v);
  }
  rep.total = total;
  if (!blocks.empty()) {
    rep.cauchy_ok = blocks.back() <= cauchy_block_tol * total;
    if (blocks.size() >= 3) rep.decay_rate = fit_log2_slope(ms, blocks);
  }
  const bool sums_ok =
      rep.cauchy_ok && rep.decay_rate < -decay_fit_tol;
  rep.certified = !rep.any_divergent && std::isfinite(total) &&
                  (sums_ok || (finite_family && mode != RectMode::Aunif) ||
                   (mode == RectMode::Aunif && std::isfinite(rep.uniform_sup)));
  return rep;
}

}  // namespace rsio
