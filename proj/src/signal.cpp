#include "gmd/signal.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gmd/fft.hpp"

namespace gmd {

int ShapeFunction::max_harmonic() const {
  int m = 0;
  for (const auto& [n, c] : coeffs) m = std::max(m, std::abs(n));
  return m;
}

cplx ShapeFunction::eval(double u) const {
  cplx acc(0.0, 0.0);
  for (const auto& [n, c] : coeffs) acc += c * std::polar(1.0, n * u);
  return acc;
}

ShapeFunction make_shape(const std::map<int, cplx>& coeffs) {
  std::map<int, cplx> kept;
  for (const auto& [n, c] : coeffs) {
    if (n == 0) throw std::invalid_argument("make_shape: coefficient at n=0 is not allowed (mean-zero)");
    if (std::abs(c) > 0.0) kept[n] = c;
  }
  if (kept.empty()) throw std::invalid_argument("make_shape: need at least one nonzero coefficient");
  int g = 0;
  for (const auto& [n, c] : kept) g = std::gcd(g, std::abs(n));
  ShapeFunction s;
  s.gcd_factor = g;
  double energy = 0.0;
  for (const auto& [n, c] : kept) energy += std::norm(c);
  double scale = 1.0 / std::sqrt(energy);
  for (const auto& [n, c] : kept) s.coeffs[n / g] = c * scale;
  return s;
}

SampledSignal synth_terms(const std::map<int, cplx>& coeffs, double wavenumber,
                          const RealFn& phase, const RealFn& amplitude, size_t L) {
  if (!is_power_of_two(L)) throw std::invalid_argument("synth: L must be a power of two");
  // Nyquist margin: the peak instantaneous frequency (max harmonic) * N *
  // max phase' must clear L/2 with ~10% headroom for modulation sidebands.
  // The derivative is probed on the grid; an exact bound is not available
  // for a closure.
  int maxn = 0;
  for (const auto& [n, c] : coeffs) maxn = std::max(maxn, std::abs(n));
  double max_dphi = 0.0;
  for (size_t l = 0; l < L; ++l) {
    double t0 = static_cast<double>(l) / static_cast<double>(L);
    double t1 = static_cast<double>(l + 1) / static_cast<double>(L);
    max_dphi = std::max(max_dphi, (phase(t1) - phase(t0)) * static_cast<double>(L));
  }
  if (static_cast<double>(L) < 2.2 * maxn * wavenumber * max_dphi + 16.0)
    throw std::invalid_argument("synth: sample count violates the Nyquist margin (aliasing)");
  SampledSignal out;
  out.samples.resize(L);
  for (size_t l = 0; l < L; ++l) {
    double t = static_cast<double>(l) / static_cast<double>(L);
    double u = two_pi * wavenumber * phase(t);
    cplx acc(0.0, 0.0);
    for (const auto& [n, c] : coeffs) acc += c * std::polar(1.0, n * u);
    out.samples[l] = amplitude(t) * acc;
  }
  return out;
}

SampledSignal synth(const GimtSpec& spec, size_t L) {
  return synth_terms(spec.shape.coeffs, spec.wavenumber, spec.phase, spec.amplitude, L);
}

SampledSignal superpose(const std::vector<SampledSignal>& modes) {
  if (modes.empty()) throw std::invalid_argument("superpose: empty mode list");
  const size_t L = modes.front().size();
  for (const auto& m : modes)
    if (m.size() != L) throw std::invalid_argument("superpose: length mismatch");
  SampledSignal out;
  out.samples.assign(L, cplx(0.0, 0.0));
  for (const auto& m : modes)
    for (size_t l = 0; l < L; ++l) out.samples[l] += m.samples[l];
  return out;
}

double noise_sigma2(const std::vector<SampledSignal>& modes, double snr_db) {
  if (modes.empty()) throw std::invalid_argument("noise_sigma2: empty mode list");
  double min_norm = std::numeric_limits<double>::infinity();
  for (const auto& m : modes) min_norm = std::min(min_norm, l2_norm(m.samples));
  return min_norm * std::pow(10.0, -snr_db / 10.0);
}

SampledSignal add_noise(const SampledSignal& f, const std::vector<SampledSignal>& modes,
                        double snr_db, uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0) return f;
  double sigma2 = noise_sigma2(modes, snr_db);
  double scale = std::sqrt(sigma2 / 2.0);
  std::mt19937_64 rng(seed);
  SampledSignal out = f;
  for (cplx& v : out.samples) {
    double z0, z1;
    rand_normal_pair(rng, z0, z1);
    v += cplx(scale * z0, scale * z1);
  }
  return out;
}

bool is_real_signal(const SampledSignal& f) {
  for (const cplx& v : f.samples)
    if (v.imag() != 0.0) return false;
  return true;
}

SampledSignal to_analytic(const SampledSignal& f) {
  cvec fh = dft(f.samples);
  const size_t L = fh.size();
  for (size_t i = 0; i < L; ++i) {
    long xi = signed_freq(i, L);
    if (xi < 0)
      fh[i] = cplx(0.0, 0.0);
    else if (xi > 0)
      fh[i] *= 2.0;
  }
  SampledSignal out;
  out.samples = idft(fh);
  return out;
}

namespace {

GimtSpec example1_mode1() {
  GimtSpec g;
  g.shape = make_shape({{1, cplx(1.0, 0.0)}, {2, std::polar(0.055, -1.3)}});
  g.amplitude = [](double x) { return 1.0 + 0.05 * std::sin(4.0 * pi * x); };
  g.wavenumber = 60.0;
  g.phase = [](double x) { return x + 0.01 * std::sin(two_pi * x); };
  return g;
}

GimtSpec example1_mode2() {
  GimtSpec g;
  g.shape = make_shape({{1, cplx(0.95, 0.0)},
                        {2, std::polar(0.85, 0.7)},
                        {3, cplx(1.0, 0.0)},
                        {4, std::polar(0.7, -1.1)},
                        {5, std::polar(0.55, 2.0)},
                        {6, cplx(0.4, 0.0)},
                        {7, cplx(0.06, 0.0)},
                        {8, cplx(0.045, 0.0)},
                        {9, cplx(0.03, 0.0)}});
  g.amplitude = [](double x) { return 1.0 + 0.1 * std::sin(two_pi * x); };
  g.wavenumber = 90.0;
  g.phase = [](double x) { return x + 0.01 * std::cos(two_pi * x); };
  return g;
}

}  // namespace

Fixture make_example1(size_t L) {
  Fixture fx;
  fx.name = "example1";
  fx.specs = {example1_mode1(), example1_mode2()};
  for (const auto& s : fx.specs) fx.modes.push_back(synth(s, L));
  fx.mixture = superpose(fx.modes);
  return fx;
}

Fixture make_example2(size_t L) {
  Fixture fx;
  fx.name = "example2";
  auto one = [](double) { return 1.0; };
  // Chirp e^{2pi i (100x + 500x^2)} as a raw single-term "mode".
  SampledSignal chirp =
      synth_terms({{1, cplx(1.0, 0.0)}}, 1.0, [](double x) { return 100.0 * x + 500.0 * x * x; }, one, L);
  // 20 unit-amplitude harmonics of N = 100 with phase x + 0.005 sin(2 pi x).
  std::map<int, cplx> harm;
  for (int n = 1; n <= 20; ++n) harm[n] = cplx(1.0, 0.0);
  SampledSignal tones =
      synth_terms(harm, 100.0, [](double x) { return x + 0.005 * std::sin(two_pi * x); }, one, L);
  fx.modes = {chirp, tones};
  fx.mixture = superpose(fx.modes);
  return fx;
}

Fixture make_example4(size_t L) {
  Fixture fx;
  fx.name = "example4";
  GimtSpec m3;
  m3.shape = make_shape({{1, cplx(1.0, 0.0)}, {2, std::polar(0.6, 0.9)}, {3, cplx(0.3, 0.0)}});
  m3.amplitude = [](double t) { return 1.0 + 0.4 * std::sin(4.0 * pi * t); };
  m3.wavenumber = 120.0;
  m3.phase = [](double t) { return t + 0.005 * std::sin(two_pi * t); };
  GimtSpec m4;
  m4.shape = make_shape({{1, cplx(0.8, 0.0)}, {2, cplx(1.0, 0.0)}, {4, std::polar(0.35, -0.5)}});
  m4.amplitude = [](double t) { return 1.0 - 0.3 * std::sin(two_pi * t); };
  m4.wavenumber = 185.0;
  m4.phase = [](double t) { return t + 0.01 * std::cos(4.0 * pi * t); };
  fx.specs = {m3, m4};
  for (const auto& s : fx.specs) fx.modes.push_back(synth(s, L));
  fx.mixture = superpose(fx.modes);
  return fx;
}

Fixture make_harmonic(double N, size_t L) {
  Fixture fx;
  fx.name = "harmonic";
  GimtSpec g;
  g.shape = make_shape({{1, cplx(1.0, 0.0)}});
  g.amplitude = [](double) { return 1.0; };
  g.wavenumber = N;
  g.phase = [](double t) { return t; };
  fx.specs = {g};
  fx.modes = {synth(g, L)};
  fx.mixture = fx.modes.front();
  return fx;
}

Fixture make_fixture(const std::string& name, size_t L, double N) {
  if (name == "example1") return make_example1(L);
  if (name == "example2") return make_example2(L);
  if (name == "example4") return make_example4(L);
  if (name == "harmonic") return make_harmonic(N, L);
  throw std::invalid_argument("unknown fixture: " + name);
}

DetrendResult detrend(const cvec& f) {
  const size_t L = f.size();
  if (L < 2) throw std::invalid_argument("detrend: need at least two samples");
  double st = 0.0, stt = 0.0;
  cplx sy(0.0, 0.0), sty(0.0, 0.0);
  for (size_t l = 0; l < L; ++l) {
    const double t = static_cast<double>(l) / static_cast<double>(L);
    st += t;
    stt += t * t;
    sy += f[l];
    sty += t * f[l];
  }
  const double n = static_cast<double>(L);
  const double det = n * stt - st * st;
  DetrendResult out;
  out.slope = (n * sty - st * sy) / det;
  out.intercept = (sy - out.slope * st) / n;
  out.detrended.resize(L);
  out.trend.resize(L);
  for (size_t l = 0; l < L; ++l) {
    const double t = static_cast<double>(l) / static_cast<double>(L);
    out.trend[l] = out.intercept + out.slope * t;
    out.detrended[l] = f[l] - out.trend[l];
  }
  return out;
}

}  // namespace gmd
