#pragma once

#include "gmd/interp.hpp"
#include "gmd/ridges.hpp"
#include "gmd/signal.hpp"

namespace gmd {

// Instantaneous phase profile p(t) = (1/m) * integral of the IF curve, with
// m the curve's midrange. `warp_t` holds the inverse profile sampled at the
// L uniform points i*p1/L of [0, p(1)] — the abscissas at which a signal is
// read when unwarping it to the profile's intrinsic time.
struct PhaseProfile {
  rvec p;       // length L+1 cumulative profile, p[0] = 0, p[L] = p1
  double p1 = 0.0;
  double m = 0.0;
  rvec warp_t;  // length L inverse-profile samples in [0, 1)
  size_t size() const { return warp_t.size(); }
};

PhaseProfile make_profile(const rvec& psi);
inline PhaseProfile make_profile(const IFCurve& psi) { return make_profile(psi.values); }

// Unwarps r to the profile's intrinsic time: h(u) = r(p_inv(u)) / amp(p_inv(u))
// on L uniform points of [0, p(1)] relabeled to [0, 1). Throws when amp dips
// below the conditioning floor 1e-6 * max(amp).
cvec inverse_warp(const cvec& r, const PhaseProfile& prof, const rvec& amp);

struct SpectrumEntry {
  double tau = 0.0;  // atom frequency against the profile phase
  cplx beta;         // accumulated gain
};

struct SpectrumTable {
  std::vector<SpectrumEntry> entries;  // in extraction order; entries[0] is the seed
  int mode_index = 0;
};

struct DsaResult {
  std::vector<cvec> modes;
  std::vector<SpectrumTable> tables;
  rvec residual_history;  // initial norm, then the norm after every iteration
  cvec residual;          // final residual samples
  size_t iterations = 0;
  bool converged = false;  // stopped on the norm threshold rather than max_iter
};

// Greedy warped-Fourier pursuit. Per iteration: unwarp the residual by every
// profile, take the DFT of each, pick the globally largest bin, fit the atom
// amp_j(t) * exp(2 pi i tau p_j(t)) by its closed-form L2 gain, subtract, and
// log (tau, beta) in mode j's table (repeated tau accumulates). Stops when
// the residual L2 norm reaches eps or after max_iter atoms. `pad` zero-pads
// the DFT by that power-of-two factor for off-grid tau refinement.
DsaResult pursue(const cvec& f, const std::vector<PhaseProfile>& profiles,
                 const std::vector<rvec>& amps, double eps, size_t max_iter = 200,
                 size_t pad = 1);

// One normalized spectral line: harmonic = tau * n_k / m rescaled to harmonic
// index, d = |beta| relative to the mode's seed atom.
struct SpectrumLine {
  double harmonic = 0.0;
  double d = 0.0;
};

std::vector<SpectrumLine> spectrum(const SpectrumTable& table, double m, int n_k = 1);

}  // namespace gmd
