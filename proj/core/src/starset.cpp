#include "roughsio/starset.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rsio {

namespace {

int stratum_index(double rho) {
  if (rho <= 1.0) return 0;
  // smallest m with rho <= 2^m
  const int m = static_cast<int>(std::ceil(std::log2(rho) - 1e-12));
  return std::max(m, 1);
}

}  // namespace

StarSet StarSet::build(const AngularKernel& kernel, int m_cap) {
  StarSet s;
  s.kernel_ = kernel;
  const int n = kernel.dim();
  const int cells = kernel.cell_count();
  s.rho_.resize(cells);
  s.stratum_of_cell_.assign(cells, -1);
  std::map<int, Stratum> by_m;
  for (int c = 0; c < cells; ++c) {
    const double a = std::abs(kernel.cell_value(c));
    const double rho = std::pow(a, 1.0 / n);
    s.rho_[c] = rho;
    s.rho_max_ = std::max(s.rho_max_, rho);
    const double mass = a * kernel.cell_measure(c) / n;
    s.measure_ += mass;
    if (a == 0.0) continue;  // empty direction: no stratum
    const int m = stratum_index(rho);
    if (m > m_cap) {
      s.residual_mass_ += mass;
      continue;
    }
    s.stratum_of_cell_[c] = m;
    auto& st = by_m[m];
    st.m = m;
    st.measure += mass;
    st.sphere_measure += kernel.cell_measure(c);
    st.cells.push_back(c);
  }
  for (auto& [m, st] : by_m) s.strata_.push_back(std::move(st));
  return s;
}

double StarSet::rho_of(const Point& y) const {
  return rho_[kernel_.cell_of_direction(normalized(y))];
}

double StarSet::dilation_threshold(const Point& y) const {
  const double r = norm(y);
  if (r == 0.0) return 0.0;
  const double rho = rho_of(y);
  if (rho == 0.0) return std::numeric_limits<double>::infinity();
  return r / rho;
}

bool StarSet::member(const Point& y, double t, double eps) const {
  if (!(t > 0)) fail(ErrorKind::Domain, "membership: dilation t must be positive");
  const double r = norm(y);
  if (r == 0.0) return true;  // origin convention
  if (r <= eps) return false;
  return dilation_threshold(y) <= t;
}

std::pair<double, double> StarSet::dilation_identity(const Point& y,
                                                     double eps) const {
  const double r = norm(y);
  if (r == 0.0) fail(ErrorKind::Domain, "dilation_identity: y = 0");
  const double rho = rho_of(y);
  if (rho == 0.0 || r <= eps) return {0.0, 0.0};
  const int n = dim();
  const double t0 = r / rho;
  // Geometric grid over 16 dyadic blocks, exact tail beyond.
  const double t1 = t0 * 65536.0;
  const double numeric =
      integrate_dt_over_t([n](double t) { return std::pow(t, -n); }, t0, t1, 32) +
      std::pow(t1, -n) / n;
  const double closed = std::pow(rho / r, n) / n;
  return {numeric, closed};
}

SetIntegrals StarSet::set_integrals() const {
  const int n = dim();
  SetIntegrals out;
  const double llogl = kernel_.llogl_norm();
  out.measure = measure_;
  Complex sgn{0, 0};
  double logp_int = 0.0, log_int = 0.0;
  for (int c = 0; c < kernel_.cell_count(); ++c) {
    const double w = kernel_.cell_measure(c);
    sgn += kernel_.cell_value(c) * w;
    const double rho = rho_[c];
    if (rho <= 0.0) continue;
    const double rn = std::pow(rho, n);
    // int_0^rho log+ r r^{n-1} dr and int_0^rho |log r| r^{n-1} dr, exact.
    if (rho > 1.0) {
      const double lg = std::log(rho);
      logp_int += w * (rn * lg / n - (rn - 1.0) / (n * static_cast<double>(n)));
      log_int += w * (rn * lg / n - rn / (n * static_cast<double>(n)) +
                      2.0 / (n * static_cast<double>(n)));
    } else {
      log_int += w * (rn / (n * static_cast<double>(n)) - rn * std::log(rho) / n);
    }
  }
  out.sgn_integral = sgn / static_cast<double>(n);
  out.logp_integral = logp_int;
  out.log_integral = log_int;
  double weighted = 0.0;
  for (const auto& st : strata_) weighted += (st.m + 1) * st.measure;
  out.weighted_strata_sum = weighted;
  out.logp_bound = llogl / (n * static_cast<double>(n));
  out.log_bound = (llogl + sphere_measure(n) / std::exp(1.0)) /
                  (n * static_cast<double>(n));
  const double cn = std::max(2.0 / n, 1.0 / (n * static_cast<double>(n) * std::log(2.0)));
  out.strata_bound = cn * llogl;
  out.achieved_cn = llogl > 0 ? weighted / llogl : 0.0;
  return out;
}

}  // namespace rsio
