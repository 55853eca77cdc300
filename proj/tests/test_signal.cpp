#include <doctest.h>

#include <cmath>
#include <map>

#include "gmd/core.hpp"
#include "gmd/signal.hpp"

using namespace gmd;

TEST_SUITE("signal") {
  TEST_CASE("shape coefficients are normalized to unit energy") {
    const ShapeFunction s = make_shape({{1, cplx(3.0, 0.0)}, {3, cplx(0.0, 4.0)}});
    CHECK(s.gcd_factor == 1);
    CHECK(std::abs(s.coeffs.at(1) - cplx(0.6, 0.0)) < 1e-15);
    CHECK(std::abs(s.coeffs.at(3) - cplx(0.0, 0.8)) < 1e-15);
    CHECK(s.max_harmonic() == 3);
  }

  TEST_CASE("shape index gcd is divided out and reported") {
    const ShapeFunction s = make_shape({{2, cplx(1.0, 0.0)}, {4, cplx(1.0, 0.0)}});
    CHECK(s.gcd_factor == 2);
    REQUIRE(s.coeffs.count(1) == 1);
    REQUIRE(s.coeffs.count(2) == 1);
    CHECK(s.coeffs.at(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS(make_shape({{0, cplx(1.0, 0.0)}}));
    CHECK_THROWS(make_shape({}));
  }

  TEST_CASE("pure harmonic synthesizes to the exact exponential") {
    const size_t L = 512;
    const double N = 33.0;
    const Fixture fx = make_harmonic(N, L);
    for (size_t l = 0; l < L; ++l) {
      const double t = static_cast<double>(l) / static_cast<double>(L);
      CHECK(std::abs(fx.mixture.samples[l] - std::polar(1.0, two_pi * N * t)) < 1e-12);
    }
  }

  TEST_CASE("synthesis rejects wavenumbers beyond the Nyquist margin") {
    CHECK_THROWS(make_harmonic(2000.0, 256));
  }

  TEST_CASE("noise variance solves the SNR definition") {
    const Fixture fx = make_harmonic(16.0, 256);  // unit-norm mode
    CHECK(noise_sigma2(fx.modes, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(noise_sigma2(fx.modes, 10.0) == doctest::Approx(0.1).epsilon(1e-12));
  }

  TEST_CASE("added noise is bit-reproducible and has the requested power") {
    const size_t L = 65536;
    const Fixture fx = make_harmonic(16.0, L);
    const SampledSignal a = add_noise(fx.mixture, fx.modes, 0.0, 2024);
    const SampledSignal b = add_noise(fx.mixture, fx.modes, 0.0, 2024);
    for (size_t l = 0; l < L; ++l) CHECK(a.samples[l] == b.samples[l]);
    double p = 0.0;
    for (size_t l = 0; l < L; ++l) p += std::norm(a.samples[l] - fx.mixture.samples[l]);
    p /= static_cast<double>(L);
    CHECK(p == doctest::Approx(1.0).epsilon(0.02));
    const SampledSignal c = add_noise(fx.mixture, fx.modes, 0.0, 2025);
    CHECK(c.samples[0] != a.samples[0]);
  }

  TEST_CASE("analytic extension turns a cosine into the exponential") {
    const size_t L = 256;
    const double N = 19.0;
    SampledSignal f;
    f.samples.resize(L);
    for (size_t l = 0; l < L; ++l) {
      const double t = static_cast<double>(l) / static_cast<double>(L);
      f.samples[l] = cplx(std::cos(two_pi * N * t), 0.0);
    }
    CHECK(is_real_signal(f));
    const SampledSignal g = to_analytic(f);
    CHECK_FALSE(is_real_signal(g));
    for (size_t l = 0; l < L; ++l) {
      const double t = static_cast<double>(l) / static_cast<double>(L);
      CHECK(std::abs(g.samples[l] - std::polar(1.0, two_pi * N * t)) < 1e-12);
    }
  }

  TEST_CASE("detrend removes an exact line") {
    const size_t L = 1024;
    const cplx a(0.5, -0.25), b(2.0, 1.0);
    cvec f(L);
    for (size_t l = 0; l < L; ++l) {
      const double t = static_cast<double>(l) / static_cast<double>(L);
      f[l] = a + b * t;
    }
    const DetrendResult r = detrend(f);
    CHECK(std::abs(r.slope - b) < 1e-12);
    CHECK(std::abs(r.intercept - a) < 1e-12);
    for (size_t l = 0; l < L; ++l) CHECK(std::abs(r.detrended[l]) < 1e-11);
  }

  TEST_CASE("detrend of line plus tone matches the geometric-series closed form") {
    // For f_l = a + b t_l + e^{2 pi i N l / L} with t_l = l/L, the normal
    // equations have closed-form sums: sum_l l w^l = L/(w-1) for w^L = 1,
    // giving slope = b + 12 L / ((L^2-1)(w-1)).
    const size_t L = 4096;
    const long N = 64;
    const cplx a(0.5, -0.25), b(2.0, 1.0);
    cvec f(L);
    for (size_t l = 0; l < L; ++l) {
      const double t = static_cast<double>(l) / static_cast<double>(L);
      f[l] = a + b * t + std::polar(1.0, two_pi * static_cast<double>(N) * t);
    }
    const cplx w = std::polar(1.0, two_pi * static_cast<double>(N) / static_cast<double>(L));
    const double Ld = static_cast<double>(L);
    const cplx slope_tone = 12.0 * Ld / ((Ld * Ld - 1.0) * (w - 1.0));
    const cplx icept_tone = -slope_tone * (Ld - 1.0) / (2.0 * Ld);
    const DetrendResult r = detrend(f);
    CHECK(std::abs(r.slope - (b + slope_tone)) < 1e-11);
    CHECK(std::abs(r.intercept - (a + icept_tone)) < 1e-11);
    for (size_t l = 0; l < L; ++l) CHECK(std::abs(r.detrended[l] + r.trend[l] - f[l]) < 1e-14);
  }

  TEST_CASE("superpose requires matching lengths") {
    const Fixture f1 = make_harmonic(8.0, 256);
    const Fixture f2 = make_harmonic(8.0, 512);
    CHECK_THROWS(superpose({f1.mixture, f2.mixture}));
  }
}
