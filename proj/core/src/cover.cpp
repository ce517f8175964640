#include "roughsio/cover.hpp"

#include <algorithm>
#include <cmath>

namespace rsio {

namespace {

struct Arc {
  double lo = 0.0, hi = 0.0;  // hi > lo, may exceed 2pi when wrapping
  double width() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
};

// Contiguous cell runs of a stratum on the circle, with cyclic wrap.
std::vector<Arc> stratum_arcs(const StarSet& star, const Stratum& st) {
  const auto& edges = star.kernel().edges2();
  const int n = star.kernel().cell_count();
  std::vector<bool> in(n, false);
  for (int c : st.cells) in[c] = true;
  int first_out = -1;
  for (int c = 0; c < n; ++c) {
    if (!in[c]) {
      first_out = c;
      break;
    }
  }
  if (first_out < 0) return {Arc{0.0, kTwoPi}};
  std::vector<Arc> arcs;
  int p = 0;
  while (p < n) {
    const int c = (first_out + p) % n;
    if (!in[c]) {
      ++p;
      continue;
    }
    int q = p;
    while (q < n && in[(first_out + q) % n]) ++q;
    const int c_lo = (first_out + p) % n;
    const int c_hi = (first_out + q - 1) % n;
    double lo = edges[c_lo];
    double hi = edges[c_hi + 1];
    if (hi <= lo) hi += kTwoPi;  // run wraps past 2pi
    arcs.push_back(Arc{lo, hi});
    p = q;
  }
  return arcs;
}

// Merge adjacent arcs whose gap is smaller than both widths, as long as the
// merged cap stays within a half circle (wider caps degenerate to the
// bounding square anyway, and merging past that would collapse distinct
// arms).
void merge_arcs(std::vector<Arc>& arcs) {
  bool merged = true;
  while (merged && arcs.size() > 1) {
    merged = false;
    std::sort(arcs.begin(), arcs.end(),
              [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const bool wrap = i + 1 == arcs.size();
      Arc& a = arcs[i];
      Arc& b = arcs[wrap ? 0 : i + 1];
      double gap = wrap ? (b.lo + kTwoPi - a.hi) : (b.lo - a.hi);
      if (gap < 0) gap = 0;
      const double w = std::min(a.width(), b.width());
      const double merged_width = a.width() + b.width() + gap;
      if (gap < w && merged_width <= kPi) {
        a.hi = (wrap ? b.hi + kTwoPi : b.hi);
        arcs.erase(arcs.begin() + (wrap ? 0 : i + 1));
        merged = true;
        break;
      }
    }
  }
}

Rectangle cap_rectangle2(double center, double half_angle, double height) {
  if (half_angle >= kPi / 2) {
    return Rectangle::axis_aligned2(height, height);  // bounding square
  }
  return Rectangle::rotated2(center, height, height * std::sin(half_angle));
}

StratifiedCover build_cover2(const StarSet& star, const BuildCoverOptions& opts) {
  StratifiedCover cover;
  for (const auto& st : star.strata()) {
    if (st.m > opts.m_max || st.cells.empty()) continue;
    auto arcs = stratum_arcs(star, st);
    merge_arcs(arcs);
    const double height = std::ldexp(1.0, st.m);
    double cap_measure = 0.0;
    int k = 1;
    double rect_measure = 0.0;
    for (const auto& a : arcs) {
      const double widened = a.width() * (1.0 + 2.0 * opts.enlarge_fraction);
      const double beta = std::min(0.5 * widened, kPi);
      CoverRectangle cr;
      cr.m = st.m;
      cr.k = k++;
      cr.cap_center = std::fmod(a.center(), kTwoPi);
      cr.cap_half_angle = beta;
      cr.rect = cap_rectangle2(cr.cap_center, beta, height);
      cap_measure += std::min(2.0 * beta, kTwoPi);
      rect_measure += cr.rect.volume();
      cover.rects.push_back(cr);
      if (cover.rects.size() > opts.max_rectangles)
        fail(ErrorKind::Resolution, "build_cover: rectangle count explosion");
    }
    if (st.sphere_measure > 0)
      cover.beta_cover = std::max(cover.beta_cover, cap_measure / st.sphere_measure);
    if (st.measure > 0)
      cover.achieved_cn = std::max(cover.achieved_cn, rect_measure / st.measure);
    cover.gamma = std::max(cover.gamma, 2.0);  // longest side = 2 * 2^m always
  }
  return cover;
}

// n=3: one spherical cap per connected component of the stratum's cells,
// centered at the component's mean direction.
StratifiedCover build_cover3(const StarSet& star, const BuildCoverOptions& opts) {
  const auto& k = star.kernel();
  StratifiedCover cover;
  for (const auto& st : star.strata()) {
    if (st.m > opts.m_max || st.cells.empty()) continue;
    std::vector<int> comp(k.cell_count(), -1);
    // grid adjacency via cell index arithmetic on the lat-long grid
    const int total = k.cell_count();
    int ncomp = 0;
    std::vector<bool> in(total, false);
    for (int c : st.cells) in[c] = true;
    // infer grid dims from measures/centers: recompute from kernel edges2 is
    // n=2 only, so walk neighbours by angular distance instead.
    // Simple union by proximity: breadth-first over cells within 2x cell
    // angular diameter.
    const double diam = 2.0 * std::sqrt(sphere_measure(3) / total);
    for (int c : st.cells) {
      if (comp[c] >= 0) continue;
      std::vector<int> queue{c};
      comp[c] = ncomp;
      while (!queue.empty()) {
        int cur = queue.back();
        queue.pop_back();
        for (int d : st.cells) {
          if (comp[d] >= 0) continue;
          const double ang = std::acos(std::clamp(
              dot(k.cell_center(cur), k.cell_center(d)), -1.0, 1.0));
          if (ang < 2.0 * diam) {
            comp[d] = ncomp;
            queue.push_back(d);
          }
        }
      }
      ++ncomp;
    }
    const double height = std::ldexp(1.0, st.m);
    double rect_measure = 0.0, cap_measure = 0.0;
    for (int comp_id = 0; comp_id < ncomp; ++comp_id) {
      Point mean = point3(0, 0, 0);
      for (int c : st.cells)
        if (comp[c] == comp_id) mean = mean + k.cell_measure(c) * k.cell_center(c);
      if (norm(mean) == 0) continue;
      const Point e1 = normalized(mean);
      double beta = 0.0;
      for (int c : st.cells) {
        if (comp[c] != comp_id) continue;
        const double ang = std::acos(std::clamp(dot(e1, k.cell_center(c)), -1.0, 1.0));
        beta = std::max(beta, ang + diam);
      }
      beta = std::min(beta * (1.0 + opts.enlarge_fraction), kPi);
      Point up = std::abs(e1.c[2]) < 0.9 ? point3(0, 0, 1) : point3(1, 0, 0);
      Point e2 = up - dot(up, e1) * e1;
      e2 = normalized(e2);
      Point e3 = point3(e1.c[1] * e2.c[2] - e1.c[2] * e2.c[1],
                        e1.c[2] * e2.c[0] - e1.c[0] * e2.c[2],
                        e1.c[0] * e2.c[1] - e1.c[1] * e2.c[0]);
      CoverRectangle cr;
      cr.m = st.m;
      cr.k = comp_id + 1;
      cr.cap_half_angle = beta;
      if (beta >= kPi / 2) {
        cr.rect = Rectangle::framed3(point3(1, 0, 0), point3(0, 1, 0),
                                     point3(0, 0, 1), height, height, height);
      } else {
        cr.rect = Rectangle::framed3(e1, e2, e3, height, height * std::sin(beta),
                                     height * std::sin(beta));
      }
      rect_measure += cr.rect.volume();
      cap_measure += kTwoPi * (1.0 - std::cos(std::min(beta, kPi)));
      cover.rects.push_back(cr);
    }
    if (st.sphere_measure > 0)
      cover.beta_cover = std::max(cover.beta_cover, cap_measure / st.sphere_measure);
    if (st.measure > 0)
      cover.achieved_cn = std::max(cover.achieved_cn, rect_measure / st.measure);
    cover.gamma = std::max(cover.gamma, 2.0);
  }
  return cover;
}

}  // namespace

std::vector<const CoverRectangle*> StratifiedCover::stratum(int m) const {
  std::vector<const CoverRectangle*> out;
  for (const auto& r : rects)
    if (r.m == m) out.push_back(&r);
  return out;
}

std::vector<int> StratifiedCover::strata_present() const {
  std::vector<int> ms;
  for (const auto& r : rects)
    if (ms.empty() || ms.back() != r.m) ms.push_back(r.m);
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

StratifiedCover build_cover(const StarSet& star, const BuildCoverOptions& opts) {
  if (star.dim() == 2) return build_cover2(star, opts);
  if (star.dim() == 3) return build_cover3(star, opts);
  fail(ErrorKind::Domain, "build_cover: dimension not supported");
}

CoverReport verify_cover(const StratifiedCover& cover, const StarSet& star,
                         int samples_per_stratum, std::uint64_t seed,
                         double boundary_guard) {
  CoverReport rep;
  rep.gamma = 0.0;
  const int n = star.dim();
  std::size_t total_miss = 0, total_samples = 0;
  for (const auto& st : star.strata()) {
    auto rects = cover.stratum(st.m);
    double rect_measure = 0.0;
    for (const auto* r : rects) {
      rect_measure += r->rect.volume();
      rep.gamma = std::max(rep.gamma,
                           r->rect.longest_side() / std::ldexp(1.0, r->m));
    }
    if (st.measure > 0)
      rep.measure_ratio_by_m[st.m] = rect_measure / st.measure;
    if (st.cells.empty()) continue;
    // Sample uniformly w.r.t. Lebesgue measure on S_m: pick a cell by mass,
    // direction uniform in the cell, radius rho U^{1/n}.
    std::vector<double> cum;
    double acc = 0.0;
    for (int c : st.cells) {
      acc += std::abs(star.kernel().cell_value(c)) * star.kernel().cell_measure(c);
      cum.push_back(acc);
    }
    if (acc <= 0) continue;
    Rng rng(seed ^ (0x9e37ULL * (st.m + 1)));
    int miss = 0;
    for (int s = 0; s < samples_per_stratum; ++s) {
      const double pick = rng.uniform() * acc;
      const std::size_t ci =
          std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin();
      const int c = st.cells[std::min(ci, st.cells.size() - 1)];
      Point dir;
      if (n == 2) {
        const auto& edges = star.kernel().edges2();
        const double t = rng.uniform(edges[c], edges[c + 1]);
        dir = direction2(t);
      } else {
        dir = star.kernel().cell_center(c);  // cell-center direction (n=3)
      }
      const double r =
          star.cell_rho(c) * std::pow(rng.uniform(), 1.0 / n) * (1.0 - boundary_guard);
      const Point y = r * dir;
      bool covered = false;
      for (const auto* rc : rects) {
        if (rc->rect.contains(y, 1e-12)) {
          covered = true;
          break;
        }
      }
      if (!covered) ++miss;
    }
    rep.miss_rate_by_m[st.m] = static_cast<double>(miss) / samples_per_stratum;
    total_miss += miss;
    total_samples += samples_per_stratum;
  }
  for (const auto& [m, ratio] : rep.measure_ratio_by_m)
    rep.achieved_cn = std::max(rep.achieved_cn, ratio);
  rep.coverage_miss_rate =
      total_samples ? static_cast<double>(total_miss) / total_samples : 0.0;
  return rep;
}

double HFactor::eval(const Point& x, const Point& y) const {
  switch (kind) {
    case Kind::One:
      return 1.0;
    case Kind::Radial:
      return std::abs(h(norm(y)));
    case Kind::Homogeneous: {
      if (norm(y) == 0) return 0.0;
      return std::abs(omega->eval(y));
    }
    case Kind::Custom:
      return custom(x, y);
  }
  return 0.0;
}

namespace {

// int_{tR} H(y)^sigma dy for x-independent H, by polar integration with the
// rectangle exit radius (n=2).
double rect_integral2(const HFactor& H, double sigma, const Rectangle& rect,
                      double t, const Point& x) {
  const Rectangle tr = rect.dilated(t);
  // Corner directions are integrand kinks.
  std::vector<double> corners;
  for (const auto& p : tr.outline2()) corners.push_back(planar_angle(p));
  std::sort(corners.begin(), corners.end());

  if (H.kind == HFactor::Kind::Homogeneous) {
    // Exact in theta per kernel cell: sum over cells of |Omega_c|^sigma times
    // the polar area integral over the cell's arc.
    const AngularKernel& k = *H.omega;
    double total = 0.0;
    const auto& edges = k.edges2();
    for (int c = 0; c < k.cell_count(); ++c) {
      const double a = std::abs(k.cell_value(c));
      if (a == 0.0) continue;
      auto area = adaptive_simpson_split(
          [&](double th) {
            const double r = tr.exit_radius(direction2(th));
            return 0.5 * r * r;
          },
          edges[c], edges[c + 1], corners, 1e-11 * tr.volume() + 1e-300, 36);
      total += std::pow(a, sigma) * area;
    }
    return total;
  }

  // Radial (or general) factor: cumulative radial integral, then the angle.
  if (H.kind == HFactor::Kind::Radial || H.kind == HFactor::Kind::One) {
    auto radial_cum = [&](double u) {
      // int_0^u H(r)^sigma r dr
      bool div = false;
      const double v = integrate_to_zero(
          [&](double r) {
            const double hv = H.kind == HFactor::Kind::One ? 1.0 : std::abs(H.h(r));
            return std::pow(hv, sigma) * r;
          },
          u, 1e-10, &div, 300);
      if (div) return std::numeric_limits<double>::infinity();
      return v;
    };
    return adaptive_simpson_split(
        [&](double th) { return radial_cum(tr.exit_radius(direction2(th))); },
        0.0, kTwoPi, corners, 1e-9 * tr.volume() + 1e-300, 30);
  }

  // Custom H(x, y): 2D polar quadrature.
  return adaptive_simpson_split(
      [&](double th) {
        const Point d = direction2(th);
        const double rmax = tr.exit_radius(d);
        return adaptive_simpson(
            [&](double r) {
              return std::pow(H.eval(x, r * d), sigma) * r;
            },
            0.0, rmax, 1e-10 * rmax + 1e-300, 30);
      },
      0.0, kTwoPi, corners, 1e-8 * tr.volume() + 1e-300, 24);
}

}  // namespace

HRectReport hrect_check(const HFactor& H, const std::vector<CoverRectangle>& rects,
                        double sigma, int t_jmin, int t_jmax, double growth_tol) {
  HRectReport rep;
  rep.per_rect_sup.assign(rects.size(), 0.0);
  const Point x0 = point2(0, 0);
  parallel_for(rects.size(), [&](std::size_t i) {
    double sup = 0.0;
    for (int j = t_jmin; j <= t_jmax; ++j) {
      const double t = std::ldexp(1.0, j);
      const double integral = rect_integral2(H, sigma, rects[i].rect, t, x0);
      const double vol = rects[i].rect.dilated(t).volume();
      sup = std::max(sup, integral / vol);
    }
    rep.per_rect_sup[i] = sup;
  });
  std::vector<double> idx;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    rep.constant = std::max(rep.constant, rep.per_rect_sup[i]);
    idx.push_back(static_cast<double>(rects[i].m));
  }
  if (rects.size() >= 3) {
    rep.growth_slope = fit_log2_slope(idx, rep.per_rect_sup);
    rep.failed = rep.growth_slope > growth_tol;
  }
  if (!std::isfinite(rep.constant)) rep.failed = true;
  return rep;
}

std::vector<CoverRectangle> geometric_arm_family(int j_max) {
  std::vector<CoverRectangle> out;
  for (int j = 0; j <= j_max; ++j) {
    CoverRectangle cr;
    cr.m = j;
    cr.k = 1;
    cr.rect = Rectangle::axis_aligned2(std::ldexp(1.0, j), std::ldexp(1.0, -2 * j));
    out.push_back(cr);
  }
  return out;
}

std::vector<Box> sample_translates_dilates(const Rectangle& base,
                                           int offsets_per_axis,
                                           double offset_span,
                                           int dilation_jmax) {
  std::vector<Box> out;
  const int n = base.dim;
  std::vector<double> steps;
  for (int i = 0; i < offsets_per_axis; ++i) {
    steps.push_back(offset_span * (2.0 * i / (offsets_per_axis - 1) - 1.0));
  }
  for (int j = -dilation_jmax; j <= dilation_jmax; ++j) {
    const double scale = std::ldexp(1.0, j);
    for (double s0 : steps) {
      for (double s1 : steps) {
        if (n == 2) {
          Box b;
          b.base = base;
          b.scale = scale;
          b.center = s0 * base.half[0] * scale * base.axes[0] +
                     s1 * base.half[1] * scale * base.axes[1];
          out.push_back(b);
        } else {
          for (double s2 : steps) {
            Box b;
            b.base = base;
            b.scale = scale;
            b.center = s0 * base.half[0] * scale * base.axes[0] +
                       s1 * base.half[1] * scale * base.axes[1] +
                       s2 * base.half[2] * scale * base.axes[2];
            out.push_back(b);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace rsio
