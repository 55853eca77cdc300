#pragma once

#include "gmd/core.hpp"

namespace gmd {

// Monotone cubic Hermite interpolant (Fritsch-Carlson PCHIP). Monotone data
// yields a monotone interpolant; general data gets local cubics with
// derivative clamping at extrema. Queries outside [x.front(), x.back()] are
// evaluated on the nearest end interval's cubic.
class Pchip {
 public:
  Pchip() = default;
  Pchip(rvec x, rvec y);

  double operator()(double t) const;
  const rvec& knots_x() const { return x_; }
  const rvec& knots_y() const { return y_; }

 private:
  rvec x_, y_, d_;  // d_ = knot derivatives
};

// Complex-valued interpolation: PCHIP on real and imaginary parts over the
// same abscissae.
class CPchip {
 public:
  CPchip() = default;
  CPchip(const rvec& x, const cvec& y);
  cplx operator()(double t) const;

 private:
  Pchip re_, im_;
};

// Piecewise-linear interpolation with circular (period-1) gap handling is in
// ridges.cpp where it is used; this header keeps only the cubic kernels.

}  // namespace gmd
