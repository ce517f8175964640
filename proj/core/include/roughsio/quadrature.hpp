#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "roughsio/common.hpp"

namespace rsio {

using RealFn = std::function<double(double)>;

// Adaptive composite Simpson on [a, b]. Tolerance is absolute; depth-limited.
double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol,
                        int max_depth = 48);

// Adaptive Simpson with forced interior nodes (integrand kinks).
double adaptive_simpson_split(const RealFn& f, double a, double b,
                              const std::vector<double>& forced,
                              double abs_tol, int max_depth = 48);

// Integral over [a, b] of f(t) dt/t on a geometric grid, Simpson in log t
// with `per_block` panels per dyadic block.
double integrate_dt_over_t(const RealFn& f, double a, double b,
                           int per_block = 32);

// Sum of dyadic-block integrals of f on (0, b], blocks [b 2^{-k-1}, b 2^{-k}].
// Stops when blocks fall below rel_tol of the running total; sets *diverged
// when blocks stop decaying. Used for integrals with an endpoint at 0.
double integrate_to_zero(const RealFn& f, double b, double rel_tol,
                         bool* diverged = nullptr, int max_blocks = 2000);

// Running integral of f over an increasing sequence of upper limits.
// advance_to integrates the new segment with two Simpson panels (the limits
// grow by ~1% per step in the sweeps that use this) unless the segment is
// wide, in which case it recurses adaptively.
class RadialAccumulator {
 public:
  RadialAccumulator(RealFn f, double start, double abs_tol)
      : f_(std::move(f)), u_(start), abs_tol_(abs_tol) {}

  double advance_to(double u);
  double value() const { return acc_; }
  double position() const { return u_; }

 private:
  RealFn f_;
  double u_;
  double abs_tol_;
  double acc_ = 0.0;
};

// Complex-valued analogue for integrands with a complex factor.
class ComplexRadialAccumulator {
 public:
  using Fn = std::function<std::complex<double>(double)>;
  ComplexRadialAccumulator(Fn f, double start, double abs_tol)
      : re_([f](double r) { return f(r).real(); }, start, abs_tol),
        im_([f](double r) { return f(r).imag(); }, start, abs_tol) {}

  std::complex<double> advance_to(double u) {
    return {re_.advance_to(u), im_.advance_to(u)};
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  RadialAccumulator re_, im_;
};

}  // namespace rsio
