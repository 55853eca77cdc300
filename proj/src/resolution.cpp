#include "gmd/resolution.hpp"

#include <cmath>
#include <stdexcept>

namespace gmd {

namespace {

void check_params(double N, double d, double s) {
  if (!(N >= 1.0)) throw std::invalid_argument("resolution: N must be >= 1");
  if (!(d > 0.0) || d > 1.0) throw std::invalid_argument("resolution: d must lie in (0,1]");
  if (!(s > 0.5) || s > 1.0) throw std::invalid_argument("resolution: s must lie in (1/2,1]");
}

double solve_a(double N, double d, double s) {
  // g(a) = N - a - d*a^s is strictly decreasing on (0, N), positive at 0.
  double lo = 0.0, hi = N;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = N - mid - d * std::pow(mid, s);
    if (g > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * N) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double single_scale(double N, double d, double s) {
  check_params(N, d, s);
  const double a = solve_a(N, d, s);
  const double lambda0 = (2.0 * a - N) / N;
  if (!(lambda0 > 0.0))
    throw std::invalid_argument("resolution: packets too wide for this level (d too large)");
  return lambda0;
}

long multiscale(double N, double d, double s) {
  check_params(N, d, s);
  const double raw = std::pow(N, 1.0 / s - 1.0) / std::pow(2.0 * d, 1.0 / s);
  return static_cast<long>(std::floor(raw * (1.0 + 1e-12) + 1e-9));
}

ResolutionReport resolution_report(double N, double d, double s) {
  ResolutionReport rep;
  rep.N = N;
  rep.s = s;
  rep.d = d;
  rep.a_star = solve_a(N, d, s);
  rep.lambda0 = single_scale(N, d, s);
  rep.n0 = multiscale(N, d, s);
  if (rep.n0 >= 2) {
    const double n0 = static_cast<double>(rep.n0);
    rep.multiscale_gap = 1.0 / ((n0 - 1.0) * N) - 1.0 / (n0 * N);
  }
  return rep;
}

}  // namespace gmd
