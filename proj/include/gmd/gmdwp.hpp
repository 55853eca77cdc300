#pragma once

#include "gmd/classify.hpp"
#include "gmd/ridges.hpp"
#include "gmd/squeeze.hpp"

namespace gmd {

// Everything recovered for one mode by masked dual-frame reconstruction.
struct ModeEstimate {
  cvec signal;                   // sum of the per-term reconstructions
  rvec amplitude;                // root-sum-square envelope over the terms
  rvec fundamental;              // fundamental IF curve g(t)
  int n0 = 1;                    // divisor used to obtain the fundamental
  rvec phase;                    // integrated fundamental in cycles, length L+1
  std::vector<cvec> per_term;    // one reconstruction per ridge support
  std::vector<int> term_labels;  // originating support labels
};

// One recovered shape function, sampled over a single period.
struct ShapeEstimate {
  cvec samples;                // P points over the period, unit discrete L2 norm
  double normalization = 1.0;  // factor applied to reach unit norm
};

// Wave-packet cell mask selecting cells whose squeeze assignment landed in S.
std::vector<std::vector<uint8_t>> support_mask(const SqueezedPlane& T, const RidgeSupport& S);

// Dual-frame reconstruction of the cells behind a single ridge support.
cvec reconstruct_term(const WavePacketPlane& plane, const SqueezedPlane& T,
                      const RidgeSupport& S);

// Pointwise root-sum-square of the term moduli.
rvec amplitude_estimate(const std::vector<cvec>& per_term);

// Integrated fundamental (trapezoid, periodic closure), in cycles; length L+1.
rvec integrate_phase(const rvec& fundamental);

// Recovers the shape: invert the integrated phase over its first period,
// sample signal/amplitude there, normalize to unit L2 norm, and rotate so the
// largest-magnitude harmonic has zero phase. Throws if the fundamental is not
// strictly positive (smooth the curve first) or covers less than one period.
ShapeEstimate shape_estimate(const cvec& mode_signal, const rvec& amplitude,
                             const rvec& fundamental, size_t P = 1024);

// Assembles the full per-mode estimate from the class's supports.
ModeEstimate build_mode(const WavePacketPlane& plane, const SqueezedPlane& T,
                        const std::vector<RidgeSupport>& class_supports,
                        const FundamentalResult& fund);

}  // namespace gmd
