#include "roughsio/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace rsio {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return (fa + 4.0 * fm + fb) * h / 6.0;
}

double adapt(const RealFn& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(err) <= tol) return left + right + err;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return adapt(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double adaptive_simpson_split(const RealFn& f, double a, double b,
                              const std::vector<double>& forced,
                              double abs_tol, int max_depth) {
  std::vector<double> nodes{a, b};
  for (double x : forced) {
    if (x > a && x < b) nodes.push_back(x);
  }
  std::sort(nodes.begin(), nodes.end());
  double total = 0.0;
  const double tol = abs_tol / std::max<std::size_t>(1, nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    total += adaptive_simpson(f, nodes[i], nodes[i + 1], tol, max_depth);
  }
  return total;
}

double integrate_dt_over_t(const RealFn& f, double a, double b,
                           int per_block) {
  if (!(a > 0) || b <= a) return 0.0;
  // g(u) = f(e^u), integral of g du over [log a, log b].
  const double ua = std::log(a), ub = std::log(b);
  const int blocks = std::max(1, static_cast<int>(std::ceil((ub - ua) / std::log(2.0))));
  const int panels = blocks * std::max(2, per_block);
  // Composite Simpson on a uniform log grid (panels is made even).
  const int m = panels % 2 == 0 ? panels : panels + 1;
  const double hh = (ub - ua) / m;
  double s = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double u = ua + i * hh;
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    s += w * f(std::exp(u));
  }
  return s * hh / 3.0;
}

double integrate_to_zero(const RealFn& f, double b, double rel_tol,
                         bool* diverged, int max_blocks) {
  if (diverged) *diverged = false;
  if (!(b > 0)) return 0.0;
  double total = 0.0;
  double hi = b;
  double prev_block = std::numeric_limits<double>::infinity();
  int stagnant = 0;
  for (int k = 0; k < max_blocks; ++k) {
    const double lo = 0.5 * hi;
    const double block = adaptive_simpson(f, lo, hi, 1e-13 * (1.0 + std::abs(total)), 40);
    total += block;
    const double mag = std::abs(block);
    if (mag >= std::abs(prev_block) * 0.999 && mag > 1e-300) {
      if (++stagnant > 24) {
        if (diverged) *diverged = true;
        return total;
      }
    } else {
      stagnant = 0;
    }
    prev_block = block;
    if (mag <= rel_tol * (std::abs(total) + 1e-300) && k > 4) return total;
    hi = lo;
  }
  if (diverged) *diverged = true;
  return total;
}

double RadialAccumulator::advance_to(double u) {
  if (u <= u_) return acc_;
  const double a = u_, b = u;
  const double w = b - a;
  // Narrow segments get a fixed two-panel Simpson with error estimate; wide
  // ones fall back to the adaptive routine.
  if (w <= 0.02 * b) {
    const double m = 0.5 * (a + b);
    const double fa = f_(a), fm = f_(m), fb = f_(b);
    const double whole = simpson(fa, fm, fb, w);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double fine = simpson(fa, f_(lm), fm, 0.5 * w) +
                        simpson(fm, f_(rm), fb, 0.5 * w);
    acc_ += fine + (fine - whole) / 15.0;
  } else {
    acc_ += adaptive_simpson(f_, a, b, abs_tol_, 40);
  }
  u_ = b;
  return acc_;
}

}  // namespace rsio
