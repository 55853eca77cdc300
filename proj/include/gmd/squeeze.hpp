#pragma once

#include "gmd/wavepacket.hpp"

namespace gmd {

// Synchrosqueezed energy histogram on a linear frequency grid. Bin i covers
// frequencies nearest to v0 + i*dv; `assignment` records, per plane cell, the
// bin that received its energy (-1 when the cell was gated out), which is what
// maps ridge supports back to wave-packet cells for reconstruction.
struct SqueezedPlane {
  std::vector<rvec> energy;  // [vbins][L]
  double v0 = 0.0;
  double dv = 1.0;
  double epsilon = 1e-6;
  std::vector<std::vector<int32_t>> assignment;  // [bands][L]
  rvec weights;                                  // ladder quadrature weights used
  bool coarse_grid_warning = false;              // dv exceeds the min band spacing

  size_t vbins() const { return energy.size(); }
  size_t cols() const { return energy.empty() ? 0 : energy.front().size(); }
  double bin_center(size_t i) const { return v0 + static_cast<double>(i) * dv; }
};

// Instantaneous-frequency information function v_f = dW/(2 pi i W) where
// |W| > 0; cells with W = 0 hold the sentinel (+inf, 0).
std::vector<cvec> if_info(const WavePacketPlane& plane);

inline bool is_vf_sentinel(const cplx& v) { return !std::isfinite(v.real()); }

// Reassigns |W|^2 * weight_j to the bin nearest Re v_f for every cell passing
// the gate |W| >= a_j^{-s/2} sqrt(epsilon) with finite v_f. Out-of-range
// frequencies clamp to the edge bins so retained energy is conserved exactly.
SqueezedPlane squeeze(const WavePacketPlane& plane, const std::vector<cvec>& vf,
                      double epsilon, double vmax = 0.0 /* 0 -> Nyquist */, double dv = 1.0);

// Sum of the histogram (Kahan); equals the retained sum of |W|^2 * weight.
double squeezed_total(const SqueezedPlane& T);

// Retained-cell energy recomputed from the plane and the assignment map
// (conservation oracle).
double retained_total(const WavePacketPlane& plane, const SqueezedPlane& T);

}  // namespace gmd
