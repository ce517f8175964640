#include "roughsio/maximal.hpp"

#include <algorithm>
#include <cmath>

namespace rsio {

MaximalConfig MaximalConfig::dyadic(int j_min, int j_max) {
  MaximalConfig cfg;
  for (int j = j_min; j <= j_max; ++j) {
    cfg.radii.push_back(std::ldexp(1.0, j));
    cfg.dilations.push_back(std::ldexp(1.0, j));
  }
  return cfg;
}

namespace {

// Grid offsets y = (di, dj) * spacing covering every node-to-node difference,
// sorted by |y| so ball sums can reuse prefix ranges.
struct OffsetTable {
  struct Entry {
    int di, dj;
    double r;       // |y|
    Point y;
  };
  std::vector<Entry> entries;           // sorted by r
  std::vector<double> h_values;          // H(., y) for x-independent H
  std::vector<double> tau;               // |y|/rho(y) thresholds for a star

  static OffsetTable build(const GridFunction& f) {
    OffsetTable t;
    const int nx = f.res[0], ny = f.res[1];
    t.entries.reserve(static_cast<std::size_t>(2 * nx - 1) * (2 * ny - 1));
    for (int dj = -(ny - 1); dj <= ny - 1; ++dj) {
      for (int di = -(nx - 1); di <= nx - 1; ++di) {
        const Point y = point2(di * f.spacing(0), dj * f.spacing(1));
        t.entries.push_back({di, dj, norm(y), y});
      }
    }
    std::sort(t.entries.begin(), t.entries.end(),
              [](const Entry& a, const Entry& b) { return a.r < b.r; });
    return t;
  }

  void fill_h(const HFactor& H) {
    h_values.resize(entries.size());
    const Point origin = point2(0, 0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      h_values[i] = entries[i].r == 0.0 && H.kind == HFactor::Kind::Homogeneous
                        ? 0.0
                        : H.eval(origin, entries[i].y);
    }
  }

  void fill_tau(const StarSet& star) {
    tau.resize(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      tau[i] = entries[i].r == 0.0 ? 0.0 : star.dilation_threshold(entries[i].y);
    }
  }
};

// Core sweep shared by the ball maximal operators: for every node, walk the
// offsets in |y| order and snapshot the running sum at each probe radius.
GridFunction ball_sweep(const GridFunction& f, const OffsetTable& table,
                        const std::vector<double>& weights,
                        const std::vector<double>& radii, double norm_exponent) {
  GridFunction out = GridFunction::zeros(f.corner, f.side, f.res);
  std::vector<double> sorted_r = radii;
  std::sort(sorted_r.begin(), sorted_r.end());
  const double vol = f.cell_volume();
  const int nx = f.res[0], ny = f.res[1];
  parallel_for(static_cast<std::size_t>(nx) * ny, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) % nx;
    const int j = static_cast<int>(idx) / nx;
    double best = 0.0;
    double running = 0.0;
    std::size_t e = 0;
    for (double r : sorted_r) {
      for (; e < table.entries.size() && table.entries[e].r < r; ++e) {
        const auto& en = table.entries[e];
        const int si = i - en.di, sj = j - en.dj;
        if (si < 0 || sj < 0 || si >= nx || sj >= ny) continue;
        const double w = weights.empty() ? 1.0 : weights[e];
        if (w == 0.0) continue;
        running += w * std::abs(f.at(si, sj));
      }
      best = std::max(best, running * vol * std::pow(r, -norm_exponent));
    }
    out.at(i, j) = best;
  });
  return out;
}

// Membership-threshold sweep for star/rectangle dilates: offsets sorted by
// their dilation threshold, snapshots at each probe dilation.
GridFunction dilate_sweep(const GridFunction& f, const OffsetTable& table,
                          const std::vector<double>& weights,
                          const std::vector<double>& thresholds,
                          const std::vector<double>& dilations,
                          double norm_exponent) {
  GridFunction out = GridFunction::zeros(f.corner, f.side, f.res);
  std::vector<std::size_t> order(table.entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return thresholds[a] < thresholds[b];
  });
  std::vector<double> sorted_t = dilations;
  std::sort(sorted_t.begin(), sorted_t.end());
  const double vol = f.cell_volume();
  const int nx = f.res[0], ny = f.res[1];
  parallel_for(static_cast<std::size_t>(nx) * ny, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) % nx;
    const int j = static_cast<int>(idx) / nx;
    double best = 0.0;
    double running = 0.0;
    std::size_t e = 0;
    for (double t : sorted_t) {
      for (; e < order.size() && thresholds[order[e]] <= t; ++e) {
        const auto& en = table.entries[order[e]];
        const int si = i - en.di, sj = j - en.dj;
        if (si < 0 || sj < 0 || si >= nx || sj >= ny) continue;
        const double w = weights.empty() ? 1.0 : weights[order[e]];
        if (w == 0.0) continue;
        running += w * std::abs(f.at(si, sj));
      }
      best = std::max(best, running * vol * std::pow(t, -norm_exponent));
    }
    out.at(i, j) = best;
  });
  return out;
}

void require_x_independent(const HFactor& H, const char* who) {
  if (H.x_dependent())
    fail(ErrorKind::Domain,
         std::string(who) + ": x-dependent H needs the pointwise evaluator");
}

}  // namespace

GridFunction hl_max(const GridFunction& f, const MaximalConfig& cfg) {
  const OffsetTable table = OffsetTable::build(f);
  return ball_sweep(f, table, {}, cfg.radii, 2.0);
}

GridFunction m_h(const GridFunction& f, const HFactor& H,
                 const MaximalConfig& cfg) {
  return m_fractional(f, H, 0.0, cfg, nullptr);
}

GridFunction m_fractional(const GridFunction& f, const HFactor& H, double mu,
                          const MaximalConfig& cfg, const StarSet* starlike) {
  if (!(mu >= 0.0 && mu < 2.0))
    fail(ErrorKind::Domain, "m_fractional: need 0 <= mu < n");
  require_x_independent(H, "m_fractional");
  OffsetTable table = OffsetTable::build(f);
  table.fill_h(H);
  if (starlike == nullptr) {
    return ball_sweep(f, table, table.h_values, cfg.radii, 2.0 - mu);
  }
  table.fill_tau(*starlike);
  return dilate_sweep(f, table, table.h_values, table.tau, cfg.dilations,
                      2.0 - mu);
}

GridFunction m_sh(const GridFunction& f, const StarSet& star, const HFactor& H,
                  const MaximalConfig& cfg) {
  return m_fractional(f, H, 0.0, cfg, &star);
}

GridFunction m_rect(const GridFunction& f, const Rectangle& rect,
                    const HFactor& H, const MaximalConfig& cfg) {
  require_x_independent(H, "m_rect");
  OffsetTable table = OffsetTable::build(f);
  table.fill_h(H);
  std::vector<double> thresholds(table.entries.size());
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& y = table.entries[i].y;
    if (table.entries[i].r == 0.0) {
      thresholds[i] = 0.0;
      continue;
    }
    // smallest t with y in tR
    double t = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
      t = std::max(t, std::abs(dot(rect.axes[axis], y)) / rect.half[axis]);
    }
    thresholds[i] = t;
  }
  return dilate_sweep(f, table, table.h_values, thresholds, cfg.dilations, 2.0);
}

double m_sh_point(const StarSet& star, const HFactor& H, const TestFunction& f,
                  const Point& x, const MaximalConfig& cfg) {
  require_x_independent(H, "m_sh_point");
  const auto& k = star.kernel();
  if (k.dim() != 2) fail(ErrorKind::Domain, "m_sh_point: n = 2 only");
  double best = 0.0;
  const double r_sup = norm(x - f.center) + f.support_radius();
  for (double t : cfg.dilations) {
    double sum = 0.0;
    for (int c = 0; c < k.cell_count(); ++c) {
      const double rho = star.cell_rho(c);
      if (rho <= 0.0) continue;
      const double upper = std::min(t * rho, r_sup);
      if (upper <= 0.0) continue;
      const Point dir = k.cell_center(c);
      const double w = k.cell_measure(c);
      double inner;
      if (H.kind == HFactor::Kind::Radial) {
        inner = adaptive_simpson(
            [&](double r) {
              return std::abs(H.h(r)) * std::abs(f.eval(x - r * dir)) * r;
            },
            0.0, upper, 1e-12 * (1.0 + upper), 40);
      } else {
        const double hval =
            H.kind == HFactor::Kind::One ? 1.0 : std::abs(k.cell_value(c));
        inner = hval * adaptive_simpson(
                           [&](double r) {
                             return std::abs(f.eval(x - r * dir)) * r;
                           },
                           0.0, upper, 1e-12 * (1.0 + upper), 40);
      }
      sum += w * inner;
    }
    best = std::max(best, sum / (t * t));
  }
  return best;
}

HCubeEstimate hcube_check(const HFactor& H, double sigma,
                          const std::vector<double>& radii,
                          const std::vector<Point>& centers,
                          double growth_tol) {
  if (!(sigma >= 1.0)) fail(ErrorKind::Domain, "hcube_check: sigma >= 1");
  HCubeEstimate est;
  std::vector<double> sorted_r = radii;
  std::sort(sorted_r.begin(), sorted_r.end());
  est.per_radius.resize(sorted_r.size(), 0.0);
  for (std::size_t ri = 0; ri < sorted_r.size(); ++ri) {
    const double r = sorted_r[ri];
    double sup = 0.0;
    for (const auto& x : centers) {
      double integral = 0.0;
      switch (H.kind) {
        case HFactor::Kind::One:
          integral = kPi * r * r;
          break;
        case HFactor::Kind::Radial: {
          bool div = false;
          integral = kTwoPi * integrate_to_zero(
                                  [&](double s) {
                                    return std::pow(std::abs(H.h(s)), sigma) * s;
                                  },
                                  r, 1e-10, &div, 300);
          if (div) integral = std::numeric_limits<double>::infinity();
          break;
        }
        case HFactor::Kind::Homogeneous: {
          // Polar closed form: r^{-n} integral = (1/n) sum |Omega_c|^sigma w_c.
          double s = 0.0;
          for (int c = 0; c < H.omega->cell_count(); ++c) {
            const double a = std::abs(H.omega->cell_value(c));
            if (a > 0) s += std::pow(a, sigma) * H.omega->cell_measure(c);
          }
          integral = s * r * r / 2.0;
          break;
        }
        case HFactor::Kind::Custom: {
          integral = adaptive_simpson(
              [&](double th) {
                const Point d = direction2(th);
                return adaptive_simpson(
                    [&](double s) {
                      return std::pow(H.eval(x, s * d), sigma) * s;
                    },
                    0.0, r, 1e-11 * r, 30);
              },
              0.0, kTwoPi, 1e-9 * r * r, 24);
          break;
        }
      }
      sup = std::max(sup, integral / (r * r));
      if (H.kind != HFactor::Kind::Custom) break;  // x-independent
    }
    est.per_radius[ri] = sup;
    est.constant = std::max(est.constant, sup);
  }
  // growth toward r -> 0 over the smallest probes
  const int tail = std::min<int>(8, static_cast<int>(sorted_r.size()));
  std::vector<double> xs, ys;
  for (int i = 0; i < tail; ++i) {
    xs.push_back(-std::log2(sorted_r[i]));
    ys.push_back(est.per_radius[i]);
  }
  if (xs.size() >= 2) est.growth_slope = fit_log2_slope(xs, ys);
  est.rejected = est.growth_slope > growth_tol || !std::isfinite(est.constant);
  return est;
}

double hcube_grid_constant(const GridFunction& geometry, const HFactor& H,
                           double sigma, const MaximalConfig& cfg) {
  require_x_independent(H, "hcube_grid_constant");
  OffsetTable table = OffsetTable::build(geometry);
  table.fill_h(H);
  std::vector<double> sorted_r = cfg.radii;
  std::sort(sorted_r.begin(), sorted_r.end());
  const double vol = geometry.cell_volume();
  double best = 0.0;
  double running = 0.0;
  std::size_t e = 0;
  for (double r : sorted_r) {
    for (; e < table.entries.size() && table.entries[e].r < r; ++e) {
      running += std::pow(table.h_values[e], sigma);
    }
    best = std::max(best, running * vol / (r * r));
  }
  return best;
}

NormProbe empirical_norm(
    const std::function<GridFunction(const GridFunction&)>& op, double p,
    const Weight& w, const std::vector<GridFunction>& test_set) {
  if (test_set.empty()) fail(ErrorKind::Domain, "empirical_norm: empty test set");
  NormProbe probe;
  for (const auto& f : test_set) {
    const double denom = grid_norm(f, p, w);
    if (denom == 0.0) {
      ++probe.skipped;
      continue;
    }
    const double num = grid_norm(op(f), p, w);
    probe.ratios.push_back(num / denom);
    probe.max_ratio = std::max(probe.max_ratio, num / denom);
  }
  return probe;
}

}  // namespace rsio
