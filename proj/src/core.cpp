#include "gmd/core.hpp"

#include <cmath>

namespace gmd {

double l2_norm(const cvec& x) {
  double acc = 0.0, c = 0.0;
  for (const cplx& v : x) {
    double term = std::norm(v) - c;
    double t = acc + term;
    c = (t - acc) - term;
    acc = t;
  }
  return std::sqrt(acc / static_cast<double>(x.size()));
}

double l2_norm(const rvec& x) {
  double acc = 0.0, c = 0.0;
  for (double v : x) {
    double term = v * v - c;
    double t = acc + term;
    c = (t - acc) - term;
    acc = t;
  }
  return std::sqrt(acc / static_cast<double>(x.size()));
}

double rel_l2_error(const cvec& x, const cvec& ref) {
  cvec diff(x.size());
  for (size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - ref[i];
  return l2_norm(diff) / l2_norm(ref);
}

double kahan_sum(const rvec& terms) {
  double acc = 0.0, c = 0.0;
  for (double v : terms) {
    double term = v - c;
    double t = acc + term;
    c = (t - acc) - term;
    acc = t;
  }
  return acc;
}

double rand_u01(std::mt19937_64& rng) {
  // 53 random bits -> (0,1]: never returns 0, so log() below is safe.
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

void rand_normal_pair(std::mt19937_64& rng, double& z0, double& z1) {
  double u1 = rand_u01(rng);
  double u2 = rand_u01(rng);
  double r = std::sqrt(-2.0 * std::log(u1));
  z0 = r * std::cos(two_pi * u2);
  z1 = r * std::sin(two_pi * u2);
}

}  // namespace gmd
