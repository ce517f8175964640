#pragma once

#include "roughsio/grid.hpp"

namespace rsio {

// Analytic test function with declared sup-norm, gradient bound, and
// effective support radius. The C^1 bump families are exact; the gaussian's
// support radius is where it falls below 1e-16 of its peak.
struct TestFunction {
  enum class Family { Gaussian, Bump, PolyBump } family = Family::Gaussian;
  Point center;
  double width = 1.0;
  double amplitude = 1.0;

  double eval(const Point& x) const;
  Point grad(const Point& x) const;
  double sup_norm() const;
  double grad_sup_norm() const;
  double support_radius() const;  // support is B(center, support_radius)

  TestFunction translated(const Point& v) const {
    TestFunction t = *this;
    t.center = center + v;
    return t;
  }
  // f_lambda(x) = f(x / lambda).
  TestFunction dilated(double lambda) const {
    TestFunction t = *this;
    t.center = lambda * center;
    t.width = width * lambda;
    return t;
  }
};

TestFunction make_test_function(TestFunction::Family fam, const Point& center,
                                double width, double amplitude = 1.0);

GridFunction sample_on_grid(const TestFunction& f, const Point& corner,
                            std::array<double, 2> side, std::array<int, 2> res);

// Lipschitz field a(x) with its gradient and declared gradient bound, for
// the commutator kernels.
struct LipschitzField {
  enum class Family { Linear, SinProd } family = Family::Linear;
  Point v;               // Linear: a(x) = v . x
  double scale = 1.0;    // SinProd: a(x) = scale sin(x1) cos(x2)

  double eval(const Point& x) const;
  Point grad(const Point& x) const;
  double grad_sup_norm() const;
  // C^2 families: second-order modulus integral int_0^1 w_x(t) dt/t finite.
  bool modulus_integrable() const { return true; }
};

}  // namespace rsio
