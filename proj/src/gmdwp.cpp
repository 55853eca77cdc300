#include "gmd/gmdwp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmd/fft.hpp"
#include "gmd/interp.hpp"

namespace gmd {

std::vector<std::vector<uint8_t>> support_mask(const SqueezedPlane& T, const RidgeSupport& S) {
  const size_t nb = T.assignment.size();
  const size_t L = T.cols();
  const size_t nv = T.vbins();
  std::vector<uint8_t> in_support(nv * L, 0);
  for (const auto& [i, l] : S.cells)
    in_support[static_cast<size_t>(i) * L + static_cast<size_t>(l)] = 1;

  std::vector<std::vector<uint8_t>> mask(nb, std::vector<uint8_t>(L, 0));
  for (size_t j = 0; j < nb; ++j) {
    for (size_t l = 0; l < L; ++l) {
      const int32_t bin = T.assignment[j][l];
      if (bin >= 0 && in_support[static_cast<size_t>(bin) * L + l]) mask[j][l] = 1;
    }
  }
  return mask;
}

cvec reconstruct_term(const WavePacketPlane& plane, const SqueezedPlane& T,
                      const RidgeSupport& S) {
  return dual_reconstruct(plane, support_mask(T, S)).samples;
}

rvec amplitude_estimate(const std::vector<cvec>& per_term) {
  if (per_term.empty()) throw std::invalid_argument("amplitude_estimate: no terms");
  const size_t L = per_term.front().size();
  rvec amp(L, 0.0);
  for (const cvec& term : per_term) {
    if (term.size() != L) throw std::invalid_argument("amplitude_estimate: length mismatch");
    for (size_t l = 0; l < L; ++l) amp[l] += std::norm(term[l]);
  }
  for (double& a : amp) a = std::sqrt(a);
  return amp;
}

rvec integrate_phase(const rvec& fundamental) {
  const size_t L = fundamental.size();
  if (L == 0) throw std::invalid_argument("integrate_phase: empty curve");
  for (double g : fundamental)
    if (!(g > 0.0))
      throw std::runtime_error(
          "integrate_phase: fundamental must be strictly positive; smooth the curve first");
  rvec phi(L + 1, 0.0);
  const double h = 1.0 / static_cast<double>(L);
  for (size_t l = 0; l < L; ++l)
    phi[l + 1] = phi[l] + 0.5 * (fundamental[l] + fundamental[(l + 1) % L]) * h;
  return phi;
}

ShapeEstimate shape_estimate(const cvec& mode_signal, const rvec& amplitude,
                             const rvec& fundamental, size_t P) {
  const size_t L = mode_signal.size();
  if (amplitude.size() != L || fundamental.size() != L)
    throw std::invalid_argument("shape_estimate: size mismatch");
  if (!is_power_of_two(P)) throw std::invalid_argument("shape_estimate: P must be a power of two");
  rvec phi = integrate_phase(fundamental);
  if (phi.back() < 1.0)
    throw std::runtime_error("shape_estimate: fundamental covers less than one period");

  rvec tk(L + 1);
  for (size_t l = 0; l <= L; ++l) tk[l] = static_cast<double>(l) / static_cast<double>(L);
  Pchip inv(phi, tk);  // t as a function of accumulated cycles

  cvec sig_wrap(mode_signal);
  sig_wrap.push_back(mode_signal.front());
  rvec amp_wrap(amplitude);
  amp_wrap.push_back(amplitude.front());
  CPchip sig(tk, sig_wrap);
  Pchip amp(tk, amp_wrap);

  double amax = 0.0;
  for (double a : amplitude) amax = std::max(amax, a);
  if (!(amax > 0.0)) throw std::runtime_error("shape_estimate: zero amplitude");

  ShapeEstimate out;
  out.samples.assign(P, cplx(0.0, 0.0));
  for (size_t i = 0; i < P; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(P);
    const double t = std::clamp(inv(u), 0.0, 1.0);
    const double a = amp(t);
    if (a < 1e-12 * amax)
      throw std::runtime_error("shape_estimate: amplitude vanishes inside the period");
    out.samples[i] = sig(t) / a;
  }

  double norm = l2_norm(out.samples);
  if (!(norm > 0.0)) throw std::runtime_error("shape_estimate: degenerate shape");
  out.normalization = 1.0 / norm;
  for (auto& v : out.samples) v *= out.normalization;

  // Zero-phase the dominant harmonic.
  cvec sh = dft(out.samples);
  size_t arg = 0;
  double best = -1.0;
  for (size_t i = 0; i < P; ++i) {
    const double mag = std::abs(sh[i]);
    if (mag > best) {
      best = mag;
      arg = i;
    }
  }
  const double theta = std::arg(sh[arg]);
  const cplx rot(std::cos(-theta), std::sin(-theta));
  for (auto& v : out.samples) v *= rot;
  return out;
}

ModeEstimate build_mode(const WavePacketPlane& plane, const SqueezedPlane& T,
                        const std::vector<RidgeSupport>& class_supports,
                        const FundamentalResult& fund) {
  if (class_supports.empty()) throw std::invalid_argument("build_mode: no supports");
  ModeEstimate mode;
  mode.fundamental = fund.curve;
  mode.n0 = fund.n0;
  mode.per_term.reserve(class_supports.size());
  for (const RidgeSupport& S : class_supports) {
    mode.per_term.push_back(reconstruct_term(plane, T, S));
    mode.term_labels.push_back(S.label);
  }
  const size_t L = mode.per_term.front().size();
  mode.signal.assign(L, cplx(0.0, 0.0));
  for (const cvec& term : mode.per_term)
    for (size_t l = 0; l < L; ++l) mode.signal[l] += term[l];
  mode.amplitude = amplitude_estimate(mode.per_term);
  mode.phase = integrate_phase(mode.fundamental);
  return mode;
}

}  // namespace gmd
