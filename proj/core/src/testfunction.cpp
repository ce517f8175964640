#include "roughsio/testfunction.hpp"

#include <cmath>

namespace rsio {

namespace {

// Bump profile g(u) = (1 - u)^2 on [0, 1], u = |x - c|^2 / w^2; C^1 with
// compact support.
double bump_profile(double u) {
  const double t = 1.0 - u;
  return t > 0 ? t * t : 0.0;
}

}  // namespace

double TestFunction::eval(const Point& x) const {
  const Point d = x - center;
  const double r2 = dot(d, d);
  const double w2 = width * width;
  switch (family) {
    case Family::Gaussian:
      return amplitude * std::exp(-0.5 * r2 / w2);
    case Family::Bump:
      return amplitude * bump_profile(r2 / w2);
    case Family::PolyBump:
      return amplitude * (d.c[0] / width) * bump_profile(r2 / w2);
  }
  return 0.0;
}

Point TestFunction::grad(const Point& x) const {
  const Point d = x - center;
  const double r2 = dot(d, d);
  const double w2 = width * width;
  switch (family) {
    case Family::Gaussian: {
      const double v = amplitude * std::exp(-0.5 * r2 / w2);
      return (-v / w2) * d;
    }
    case Family::Bump: {
      const double u = r2 / w2;
      if (u >= 1.0) return point2(0, 0);
      return (amplitude * (-4.0) * (1.0 - u) / w2) * d;
    }
    case Family::PolyBump: {
      const double u = r2 / w2;
      if (u >= 1.0) return point2(0, 0);
      const double g = bump_profile(u);
      Point out = (amplitude * d.c[0] / width) * ((-4.0) * (1.0 - u) / w2) * d;
      out.c[0] += amplitude * g / width;
      return out;
    }
  }
  return point2(0, 0);
}

double TestFunction::sup_norm() const {
  switch (family) {
    case Family::Gaussian:
    case Family::Bump:
      return std::abs(amplitude);
    case Family::PolyBump: {
      // max over s in [0,1) of s (1-s^2)^2 is at s = 1/sqrt(5).
      const double s = 1.0 / std::sqrt(5.0);
      return std::abs(amplitude) * s * bump_profile(s * s);
    }
  }
  return 0.0;
}

double TestFunction::grad_sup_norm() const {
  switch (family) {
    case Family::Gaussian:
      // |grad| = (r/w^2) e^{-r^2/2w^2}, max at r = w.
      return std::abs(amplitude) * std::exp(-0.5) / width;
    case Family::Bump: {
      // |grad| = (4 r / w^2)(1 - r^2/w^2), max of 4 s (1-s^2) at s=1/sqrt(3).
      const double s = 1.0 / std::sqrt(3.0);
      return std::abs(amplitude) * 4.0 * s * (1.0 - s * s) / width;
    }
    case Family::PolyBump: {
      // Conservative closed bound; the true sup is smaller.
      return std::abs(amplitude) * (1.0 + 4.0 / std::sqrt(3.0)) / width;
    }
  }
  return 0.0;
}

double TestFunction::support_radius() const {
  switch (family) {
    case Family::Gaussian:
      return 8.6 * width;  // exp(-8.6^2/2) < 1e-16
    case Family::Bump:
    case Family::PolyBump:
      return width;
  }
  return width;
}

TestFunction make_test_function(TestFunction::Family fam, const Point& center,
                                double width, double amplitude) {
  if (!(width > 0)) fail(ErrorKind::Config, "test function: width > 0");
  TestFunction f;
  f.family = fam;
  f.center = center;
  f.width = width;
  f.amplitude = amplitude;
  return f;
}

GridFunction sample_on_grid(const TestFunction& f, const Point& corner,
                            std::array<double, 2> side, std::array<int, 2> res) {
  GridFunction g = GridFunction::zeros(corner, side, res);
  for (int j = 0; j < res[1]; ++j)
    for (int i = 0; i < res[0]; ++i) g.at(i, j) = f.eval(g.node(i, j));
  return g;
}

double LipschitzField::eval(const Point& x) const {
  switch (family) {
    case Family::Linear:
      return dot(v, x);
    case Family::SinProd:
      return scale * std::sin(x.c[0]) * std::cos(x.c[1]);
  }
  return 0.0;
}

Point LipschitzField::grad(const Point& x) const {
  switch (family) {
    case Family::Linear:
      return v;
    case Family::SinProd:
      return point2(scale * std::cos(x.c[0]) * std::cos(x.c[1]),
                    -scale * std::sin(x.c[0]) * std::sin(x.c[1]));
  }
  return point2(0, 0);
}

double LipschitzField::grad_sup_norm() const {
  switch (family) {
    case Family::Linear:
      return norm(v);
    case Family::SinProd:
      // |grad|^2 = cos^2 x1 cos^2 x2 + sin^2 x1 sin^2 x2 <= 1.
      return std::abs(scale);
  }
  return 0.0;
}

}  // namespace rsio
