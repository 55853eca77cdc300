#pragma once

#include "gmd/core.hpp"

namespace gmd {

// In-place radix-2 FFT. Forward: X_k = sum_l a_l e^{-2pi i kl/L} (no scaling);
// inverse: sum with e^{+2pi i kl/L} (no 1/L). L must be a power of two.
void fft_inplace(cvec& a, bool inverse);

bool is_power_of_two(size_t n);

// Fourier-series coefficients on [0,1]: f_hat(xi) = (1/L) sum f_l e^{-2pi i xi l/L},
// stored in natural DFT order (index k holds xi = k for k < L/2, xi = k - L else).
cvec dft(const cvec& x);

// Exact inverse of dft(): f_l = sum_xi f_hat(xi) e^{+2pi i xi l/L}.
cvec idft(const cvec& fh);

// Natural-order index <-> signed frequency in [-L/2, L/2).
long signed_freq(size_t idx, size_t L);
size_t freq_index(long xi, size_t L);

}  // namespace gmd
