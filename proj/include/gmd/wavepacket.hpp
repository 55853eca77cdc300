#pragma once

#include "gmd/signal.hpp"

namespace gmd {

// C-infinity bump on (-d,d): w_hat(xi) = exp(1 - 1/(1 - (xi/d)^2)), peak 1 at 0.
struct MotherWavePacket {
  double d = 1.0;
  double operator()(double xi) const;
};

MotherWavePacket build_mother(double d);

// Geometric ladder of band centers a_j >= 1 with bands (a_j - d a_j^s, a_j + d a_j^s).
// Consecutive bands overlap by the fraction `overlap` of a band's full width;
// the next band's left edge sits at a_j + (1 - 2*overlap) * d * a_j^s.
struct FrequencyLadder {
  rvec centers;
  double s = 2.0 / 3.0;
  double d = 1.0;
  double overlap = 0.5;
  rvec weights;  // trapezoid center-spacing quadrature weights for the a-integral

  double band_radius(size_t j) const;
  size_t bands() const { return centers.size(); }
};

FrequencyLadder make_ladder(size_t L, double s, double d, double overlap = 0.5);

// W_f(a_j, b_l) rows (and the exact-multiplier db derivative rows) plus the
// analysis family that produced them.
struct WavePacketPlane {
  std::vector<cvec> coeffs;   // [bands][L]
  std::vector<cvec> dcoeffs;  // [bands][L]; empty when not requested
  FrequencyLadder ladder;
  MotherWavePacket mother;
  size_t L = 0;

  // Fourier multiplier of band j at integer frequency xi:
  // m_j(xi) = a_j^{-s/2} * w_hat(a_j^{-s} (xi - a_j)).
  double multiplier(size_t j, double xi) const;
  // Integer-frequency window [lo, hi] of band j clipped to the signed grid.
  void band_window(size_t j, long& lo, long& hi) const;
};

WavePacketPlane forward(const SampledSignal& f, const MotherWavePacket& mother,
                        const FrequencyLadder& ladder, bool want_derivative = true);

struct EnergyRatio {
  double lower = 0.0;   // min over active bins of the discrete frame function
  double upper = 0.0;   // max over active bins
  double ratio = 0.0;   // (integral |W|^2 da db) / (integral |f|^2 dt)
  bool low_freq_warning = false;  // spectral energy below |xi| = 1
};

EnergyRatio energy_ratio(const WavePacketPlane& plane, const SampledSignal& f);

// Dual-frame reconstruction over a boolean cell mask (bands x L):
// g_hat(xi) = sum_j m_j(xi) * DFT_b(mask_j . coeffs_j)(xi) / sum_j m_j(xi)^2.
SampledSignal dual_reconstruct(const WavePacketPlane& plane,
                               const std::vector<std::vector<uint8_t>>& mask);

}  // namespace gmd
