#include "roughsio/grid.hpp"

#include <cmath>

namespace rsio {

GridFunction GridFunction::zeros(const Point& corner, std::array<double, 2> side,
                                 std::array<int, 2> res) {
  GridFunction g;
  g.corner = corner;
  g.side = side;
  g.res = res;
  g.validate();
  g.values.assign(static_cast<std::size_t>(res[0]) * res[1], {0.0, 0.0});
  return g;
}

void GridFunction::validate() const {
  if (res[0] < 2 || res[1] < 2)
    fail(ErrorKind::Config, "grid: resolution must be >= 2 per axis");
  if (!(side[0] > 0) || !(side[1] > 0))
    fail(ErrorKind::Config, "grid: box sides must be positive");
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorKind::Config, "grid: non-finite value");
  }
}

double grid_norm(const GridFunction& g, double p, const Weight& w) {
  if (!(p > 0)) fail(ErrorKind::Domain, "grid_norm: p > 0");
  double s = 0.0;
  for (int j = 0; j < g.res[1]; ++j) {
    for (int i = 0; i < g.res[0]; ++i) {
      const double a = std::abs(g.at(i, j));
      if (a == 0.0) continue;
      s += std::pow(a, p) * w.eval(g.node(i, j));
    }
  }
  return std::pow(s * g.cell_volume(), 1.0 / p);
}

GridFunction centered_grid(double L, int res) {
  if (res % 2 != 0) ++res;
  return GridFunction::zeros(point2(-L, -L), {2 * L, 2 * L}, {res, res});
}

}  // namespace rsio
