#pragma once

#include <functional>
#include <map>
#include <string>

#include "gmd/core.hpp"

namespace gmd {

// 2pi-periodic, mean-zero, unit-norm waveform given by its Fourier
// coefficients s_hat(n), n != 0. The constructor normalizes to
// sum |s_hat(n)|^2 = 1 and rescales indices so gcd{|n|} = 1, reporting the
// factor.
struct ShapeFunction {
  std::map<int, cplx> coeffs;
  int gcd_factor = 1;  // index divisor applied to enforce gcd 1

  int max_harmonic() const;
  cplx eval(double u) const;  // s(u) = sum s_hat(n) e^{i n u}
};

ShapeFunction make_shape(const std::map<int, cplx>& coeffs);

using RealFn = std::function<double(double)>;

// General intrinsic mode type: amplitude(t) * s(2*pi*wavenumber*phase(t)).
struct GimtSpec {
  ShapeFunction shape;
  RealFn amplitude;   // > 0 on [0,1]
  double wavenumber;  // N_k > 0
  RealFn phase;       // strictly increasing, smooth
};

// Complex samples on the uniform grid t_l = l/L over [0,1).
struct SampledSignal {
  cvec samples;
  size_t size() const { return samples.size(); }
};

SampledSignal synth(const GimtSpec& spec, size_t L);

// Raw synthesis without shape normalization (fixture plumbing; Example 2
// sums unit-amplitude exponentials).
SampledSignal synth_terms(const std::map<int, cplx>& coeffs, double wavenumber,
                          const RealFn& phase, const RealFn& amplitude, size_t L);

SampledSignal superpose(const std::vector<SampledSignal>& modes);

// Noise variance solving SNR = min_i 10*log10(||f_i||_{L2} / sigma^2).
double noise_sigma2(const std::vector<SampledSignal>& modes, double snr_db);

// Adds complex circular Gaussian noise with that variance; deterministic in
// the seed (bit-reproducible).
SampledSignal add_noise(const SampledSignal& f, const std::vector<SampledSignal>& modes,
                        double snr_db, uint64_t seed);

bool is_real_signal(const SampledSignal& f);

// Analytic conversion: negative-frequency bins zeroed, positive doubled,
// DC kept.
SampledSignal to_analytic(const SampledSignal& f);

// Least-squares line removal over t_l = l/L.
struct DetrendResult {
  cvec detrended;
  cvec trend;
  cplx intercept;
  cplx slope;
};

DetrendResult detrend(const cvec& f);

// Built-in fixtures.
struct Fixture {
  SampledSignal mixture;
  std::vector<SampledSignal> modes;
  std::vector<GimtSpec> specs;  // empty entry-wise info for raw terms (example 2 chirp)
  std::string name;
};

Fixture make_example1(size_t L);
Fixture make_example2(size_t L);
Fixture make_example4(size_t L);
Fixture make_harmonic(double N, size_t L);
Fixture make_fixture(const std::string& name, size_t L, double N = 64.0);

}  // namespace gmd
