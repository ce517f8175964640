#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "roughsio/common.hpp"

namespace rsio {

// Point in R^n, n = 2 or 3. The third coordinate is 0 when n = 2.
struct Point {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  int dim = 2;
};

inline Point point2(double x, double y) { return Point{{x, y, 0.0}, 2}; }
inline Point point3(double x, double y, double z) { return Point{{x, y, z}, 3}; }

inline double dot(const Point& a, const Point& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

inline Point operator+(const Point& a, const Point& b) {
  return Point{{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}, a.dim};
}
inline Point operator-(const Point& a, const Point& b) {
  return Point{{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]}, a.dim};
}
inline Point operator*(double s, const Point& a) {
  return Point{{s * a.c[0], s * a.c[1], s * a.c[2]}, a.dim};
}

inline Point normalized(const Point& a) {
  const double n = norm(a);
  if (n == 0.0) fail(ErrorKind::Domain, "normalized: zero vector");
  return (1.0 / n) * a;
}

// Angle in [0, 2pi) of a nonzero planar vector.
inline double planar_angle(const Point& a) {
  double t = std::atan2(a.c[1], a.c[0]);
  if (t < 0) t += kTwoPi;
  return t;
}

inline Point direction2(double theta) {
  return point2(std::cos(theta), std::sin(theta));
}

// Direction on S^2 from polar angle (from +z) and azimuth.
inline Point direction3(double polar, double azimuth) {
  const double s = std::sin(polar);
  return point3(s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar));
}

// Origin-centered rectangle (n=2) or rectangular box (n=3) given by an
// orthonormal frame (rows = axes) and half-extents per axis.
struct Rectangle {
  int dim = 2;
  std::array<Point, 3> axes{point2(1, 0), point2(0, 1), point3(0, 0, 1)};
  std::array<double, 3> half{1.0, 1.0, 1.0};

  static Rectangle axis_aligned2(double hx, double hy) {
    Rectangle r;
    r.dim = 2;
    r.half = {hx, hy, 1.0};
    return r;
  }

  // n=2 rectangle whose first axis points along `angle`.
  static Rectangle rotated2(double angle, double h1, double h2) {
    Rectangle r;
    r.dim = 2;
    r.axes[0] = direction2(angle);
    r.axes[1] = point2(-r.axes[0].c[1], r.axes[0].c[0]);
    r.half = {h1, h2, 1.0};
    return r;
  }

  static Rectangle framed3(const Point& e1, const Point& e2, const Point& e3,
                           double h1, double h2, double h3) {
    Rectangle r;
    r.dim = 3;
    r.axes = {e1, e2, e3};
    r.half = {h1, h2, h3};
    return r;
  }

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= 2.0 * half[i];
    return v;
  }

  // Angle of the longest axis from the x1-axis, reduced to [0, pi/2] (n=2).
  double major_axis_angle() const {
    const int major = half[0] >= half[1] ? 0 : 1;
    double t = std::atan2(std::abs(axes[major].c[1]), std::abs(axes[major].c[0]));
    return t;
  }

  double longest_side() const {
    double m = 0;
    for (int i = 0; i < dim; ++i) m = std::max(m, 2.0 * half[i]);
    return m;
  }

  Rectangle dilated(double t) const {
    Rectangle r = *this;
    for (int i = 0; i < dim; ++i) r.half[i] *= t;
    return r;
  }

  bool contains(const Point& y, double tol = 0.0) const {
    for (int i = 0; i < dim; ++i) {
      if (std::abs(dot(axes[i], y)) > half[i] * (1.0 + tol) + 1e-300) return false;
    }
    return true;
  }

  // Distance from the origin to the boundary along direction d (|d| = 1).
  double exit_radius(const Point& d) const {
    double r = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim; ++i) {
      const double p = std::abs(dot(axes[i], d));
      if (p > 0) r = std::min(r, half[i] / p);
    }
    return r;
  }

  // Corner polyline (closed, 5 points) for plotting, n=2 only.
  std::vector<Point> outline2() const {
    std::vector<Point> pts;
    const std::array<std::array<double, 2>, 5> signs{
        {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}, {1, 1}}};
    for (const auto& s : signs) {
      pts.push_back(s[0] * half[0] * axes[0] + s[1] * half[1] * axes[1]);
    }
    return pts;
  }
};

// A translate+dilate of an origin-centered rectangle: the probe regions of
// the collection B(R).
struct Box {
  Rectangle base;
  Point center;
  double scale = 1.0;

  double volume() const { return base.dilated(scale).volume(); }
  bool contains(const Point& y, double tol = 0.0) const {
    return base.dilated(scale).contains(y - center, tol);
  }
};

}  // namespace rsio
