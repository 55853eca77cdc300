#include "gmd/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace gmd {

bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_inplace(cvec& a, bool inverse) {
  const size_t n = a.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft: length must be a power of two");
  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * two_pi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        cplx u = a[i + k];
        cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

cvec dft(const cvec& x) {
  cvec out = x;
  fft_inplace(out, false);
  const double inv = 1.0 / static_cast<double>(x.size());
  for (cplx& v : out) v *= inv;
  return out;
}

cvec idft(const cvec& fh) {
  cvec out = fh;
  fft_inplace(out, true);
  return out;
}

long signed_freq(size_t idx, size_t L) {
  long k = static_cast<long>(idx);
  long half = static_cast<long>(L / 2);
  return k < half ? k : k - static_cast<long>(L);
}

size_t freq_index(long xi, size_t L) {
  long l = static_cast<long>(L);
  long m = ((xi % l) + l) % l;
  return static_cast<size_t>(m);
}

}  // namespace gmd
