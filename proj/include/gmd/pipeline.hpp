#pragma once

#include "gmd/classify.hpp"
#include "gmd/dsa.hpp"
#include "gmd/gmdwp.hpp"
#include "gmd/ridges.hpp"
#include "gmd/signal.hpp"
#include "gmd/squeeze.hpp"
#include "gmd/wavepacket.hpp"

namespace gmd {

// Run-wide knobs; defaults are the experiment defaults (s = 2/3, d = 1,
// epsilon = 1e-6, L = 8192).
struct PipelineConfig {
  double s = 2.0 / 3.0;
  double d = 1.0;
  double epsilon = 1e-6;
  size_t L = 8192;  // used by generators; decompose takes L from the signal
  double overlap = 0.5;
  double vbin = 1.0;
  double ridge_level = 0.01;
  double ridge_floor = 1e-3;
  size_t smooth_cutoff = 8;   // IF-curve low-pass; 0 disables
  double sigma = 0.0;         // affinity bandwidth; 0 -> median heuristic
  int fundamental_cap = 32;   // search cap for the harmonic divisor
  double dsa_eps_rel = 1e-3;  // stop at this fraction of ||f||
  double dsa_eps_abs = 0.0;   // absolute stop norm; overrides rel when > 0
  size_t dsa_max_iter = 200;
  size_t dsa_pad = 1;       // DFT zero-padding factor (power of two)
  size_t amp_cutoff = 16;   // low-pass cutoff for DSA atom amplitudes
  size_t shape_samples = 1024;
  uint64_t seed = 12345;
};

// Everything the decomposition produces, kept for inspection and export.
struct DecomposeResult {
  SampledSignal input;  // signal the transform ran on (analytic-extended if real)
  bool analytic_extended = false;
  WavePacketPlane plane;
  EnergyRatio energy;
  SqueezedPlane squeezed;
  std::vector<RidgeSupport> supports;
  std::vector<IFCurve> curves;  // condensed and smoothed, one per support
  ClassifyResult classification;
  std::vector<std::vector<size_t>> class_members;  // curve indices per class
  std::vector<FundamentalResult> fundamentals;     // per class
  std::vector<ModeEstimate> gmdwp_modes;           // per class
  std::vector<ShapeEstimate> gmdwp_shapes;         // per class
  std::vector<rvec> dsa_amps;                      // smoothed atom amplitudes
  DsaResult dsa;
  std::vector<ShapeEstimate> dsa_shapes;  // per class, from the refined modes
};

// Full chain: (analytic extension) -> forward transform -> squeeze -> ridge
// extraction -> curve classification -> fundamentals -> masked dual-frame
// reconstruction -> warped greedy pursuit.
DecomposeResult decompose(const SampledSignal& f, const PipelineConfig& cfg);

}  // namespace gmd
