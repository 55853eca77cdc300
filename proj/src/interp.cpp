#include "gmd/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gmd {

namespace {

// Fritsch-Carlson knot derivatives.
rvec pchip_derivatives(const rvec& x, const rvec& y) {
  const size_t n = x.size();
  rvec d(n, 0.0);
  if (n == 2) {
    double s = (y[1] - y[0]) / (x[1] - x[0]);
    d[0] = d[1] = s;
    return d;
  }
  rvec h(n - 1), delta(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) return 0.0;
    if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace

Pchip::Pchip(rvec x, rvec y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2)
    throw std::invalid_argument("pchip: need >= 2 knots with matching sizes");
  for (size_t i = 0; i + 1 < x_.size(); ++i)
    if (!(x_[i] < x_[i + 1])) throw std::invalid_argument("pchip: abscissae must be strictly increasing");
  d_ = pchip_derivatives(x_, y_);
}

double Pchip::operator()(double t) const {
  size_t i;
  if (t <= x_.front()) {
    i = 0;
  } else if (t >= x_.back()) {
    i = x_.size() - 2;
  } else {
    i = static_cast<size_t>(std::upper_bound(x_.begin(), x_.end(), t) - x_.begin()) - 1;
  }
  double h = x_[i + 1] - x_[i];
  double s = (t - x_[i]) / h;
  double s2 = s * s, s3 = s2 * s;
  double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  double h10 = s3 - 2.0 * s2 + s;
  double h01 = -2.0 * s3 + 3.0 * s2;
  double h11 = s3 - s2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

CPchip::CPchip(const rvec& x, const cvec& y) {
  rvec re(y.size()), im(y.size());
  for (size_t i = 0; i < y.size(); ++i) {
    re[i] = y[i].real();
    im[i] = y[i].imag();
  }
  re_ = Pchip(x, re);
  im_ = Pchip(x, im);
}

cplx CPchip::operator()(double t) const { return cplx(re_(t), im_(t)); }

}  // namespace gmd
