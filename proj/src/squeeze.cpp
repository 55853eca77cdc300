#include "gmd/squeeze.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gmd {

std::vector<cvec> if_info(const WavePacketPlane& plane) {
  const size_t nb = plane.ladder.bands();
  const size_t L = plane.L;
  if (plane.dcoeffs.size() != nb)
    throw std::invalid_argument("if_info: plane was built without derivative coefficients");
  std::vector<cvec> vf(nb, cvec(L));
  const cplx sentinel(std::numeric_limits<double>::infinity(), 0.0);
  for (size_t j = 0; j < nb; ++j) {
    for (size_t l = 0; l < L; ++l) {
      const cplx w = plane.coeffs[j][l];
      if (w == cplx(0.0, 0.0)) {
        vf[j][l] = sentinel;
      } else {
        vf[j][l] = plane.dcoeffs[j][l] / (cplx(0.0, two_pi) * w);
      }
    }
  }
  return vf;
}

SqueezedPlane squeeze(const WavePacketPlane& plane, const std::vector<cvec>& vf, double epsilon,
                      double vmax, double dv) {
  const size_t nb = plane.ladder.bands();
  const size_t L = plane.L;
  if (vf.size() != nb) throw std::invalid_argument("squeeze: vf shape mismatch");
  if (epsilon <= 0.0) throw std::invalid_argument("squeeze: epsilon must be positive");
  if (dv <= 0.0) throw std::invalid_argument("squeeze: dv must be positive");
  if (vmax <= 0.0) vmax = static_cast<double>(L) / 2.0;

  SqueezedPlane T;
  T.v0 = 0.0;
  T.dv = dv;
  T.epsilon = epsilon;
  T.weights = plane.ladder.weights;
  const size_t vbins = static_cast<size_t>(std::floor(vmax / dv)) + 1;
  T.energy.assign(vbins, rvec(L, 0.0));
  T.assignment.assign(nb, std::vector<int32_t>(L, -1));

  // A grid coarser than the tightest band spacing can merge neighboring
  // components; flag it so callers can surface the condition.
  double min_gap = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j + 1 < nb; ++j)
    min_gap = std::min(min_gap, plane.ladder.centers[j + 1] - plane.ladder.centers[j]);
  T.coarse_grid_warning = (nb > 1 && dv > min_gap);

  const double sqrt_eps = std::sqrt(epsilon);
  for (size_t j = 0; j < nb; ++j) {
    const double gate = std::pow(plane.ladder.centers[j], -0.5 * plane.ladder.s) * sqrt_eps;
    const double wj = plane.ladder.weights[j];
    for (size_t l = 0; l < L; ++l) {
      const cplx w = plane.coeffs[j][l];
      const double mag = std::abs(w);
      if (mag < gate) continue;
      const cplx v = vf[j][l];
      if (is_vf_sentinel(v)) continue;
      double target = v.real();
      long bin = std::lround(target / dv);
      if (bin < 0) bin = 0;
      if (bin >= static_cast<long>(vbins)) bin = static_cast<long>(vbins) - 1;
      T.energy[static_cast<size_t>(bin)][l] += mag * mag * wj;
      T.assignment[j][l] = static_cast<int32_t>(bin);
    }
  }
  return T;
}

double squeezed_total(const SqueezedPlane& T) {
  double sum = 0.0, c = 0.0;
  for (const auto& row : T.energy) {
    for (double e : row) {
      const double y = e - c;
      const double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

double retained_total(const WavePacketPlane& plane, const SqueezedPlane& T) {
  double sum = 0.0, c = 0.0;
  const size_t nb = plane.ladder.bands();
  for (size_t j = 0; j < nb; ++j) {
    const double wj = plane.ladder.weights[j];
    for (size_t l = 0; l < plane.L; ++l) {
      if (T.assignment[j][l] < 0) continue;
      const double mag = std::abs(plane.coeffs[j][l]);
      const double y = mag * mag * wj - c;
      const double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

}  // namespace gmd
