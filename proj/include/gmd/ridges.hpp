#pragma once

#include <cstdint>
#include <utility>

#include "gmd/squeeze.hpp"

namespace gmd {

// A connected set of squeezed-plane cells carrying significant energy.
struct RidgeSupport {
  std::vector<std::pair<int32_t, int32_t>> cells;  // (vbin, column)
  double energy = 0.0;
  int label = -1;  // position after energy-descending sort
};

// One instantaneous-frequency curve, condensed column-by-column from a
// support. Columns the support does not touch are flagged as gaps and filled
// by periodic linear interpolation so downstream consumers always see a full
// curve; flags let ratio fits skip the synthesized columns.
struct IFCurve {
  rvec values;               // frequency per column, length L
  rvec weights;              // column energy inside the support
  std::vector<uint8_t> gap;  // 1 where the value was interpolated
  int support_label = -1;
  double energy = 0.0;
};

// Thresholds the squeezed plane at level * max cell energy, takes
// 8-connected components (time axis wraps; frequency axis does not), drops
// components holding less than floor_frac of the total squeezed energy, and
// returns the rest sorted by energy descending. Throws if nothing survives.
std::vector<RidgeSupport> extract_supports(const SqueezedPlane& T, double level = 0.01,
                                           double floor_frac = 1e-3);

// Energy-weighted mean frequency per column over the support's cells.
IFCurve condense(const SqueezedPlane& T, const RidgeSupport& S);

// Periodic low-pass: keep Fourier modes |xi| <= cutoff. cutoff = 0 returns
// the input unchanged; length must be a power of two.
rvec smooth_periodic(const rvec& x, size_t cutoff);

inline void smooth_curve(IFCurve& c, size_t cutoff) {
  if (cutoff > 0) c.values = smooth_periodic(c.values, cutoff);
}

}  // namespace gmd
