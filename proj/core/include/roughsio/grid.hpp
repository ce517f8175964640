#pragma once

#include <complex>
#include <vector>

#include "roughsio/geometry.hpp"
#include "roughsio/weights.hpp"

namespace rsio {

// Sampled function on a uniform box grid (n = 2). Values live at cell
// centers; the function is extended by zero outside the box.
struct GridFunction {
  Point corner;                 // lowest corner of the box
  std::array<double, 2> side{2.0, 2.0};
  std::array<int, 2> res{17, 17};
  std::vector<std::complex<double>> values;

  static GridFunction zeros(const Point& corner, std::array<double, 2> side,
                            std::array<int, 2> res);

  int count() const { return res[0] * res[1]; }
  double spacing(int axis) const { return side[axis] / res[axis]; }
  double cell_volume() const { return spacing(0) * spacing(1); }
  Point node(int i, int j) const {
    return point2(corner.c[0] + (i + 0.5) * spacing(0),
                  corner.c[1] + (j + 0.5) * spacing(1));
  }
  std::complex<double>& at(int i, int j) { return values[i + res[0] * j]; }
  const std::complex<double>& at(int i, int j) const {
    return values[i + res[0] * j];
  }

  void validate() const;
};

// ||g||_{p,w} by the grid's cell-center quadrature.
double grid_norm(const GridFunction& g, double p, const Weight& w);

// Symmetric box [-L, L]^2 with an even node count per axis, so no node sits
// exactly at the origin (power weights stay finite at nodes).
GridFunction centered_grid(double L, int res);

}  // namespace rsio
