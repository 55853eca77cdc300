#include "gmd/dsa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gmd/fft.hpp"

namespace gmd {

namespace {

// Knot grids shared by every interpolation here: sample times 0..(L-1)/L plus
// the wrap point t = 1 carrying the t = 0 value, so queries cover [0, 1].
rvec wrap_knots(size_t L) {
  rvec x(L + 1);
  for (size_t l = 0; l <= L; ++l) x[l] = static_cast<double>(l) / static_cast<double>(L);
  return x;
}

rvec wrap_values(const rvec& y) {
  rvec out(y.size() + 1);
  std::copy(y.begin(), y.end(), out.begin());
  out.back() = y.front();
  return out;
}

cvec wrap_values(const cvec& y) {
  cvec out(y.size() + 1);
  std::copy(y.begin(), y.end(), out.begin());
  out.back() = y.front();
  return out;
}

void check_amp(const rvec& amp) {
  double amax = 0.0, amin = std::numeric_limits<double>::infinity();
  for (double a : amp) {
    amax = std::max(amax, a);
    amin = std::min(amin, a);
  }
  if (!(amax > 0.0) || amin < 1e-6 * amax)
    throw std::runtime_error(
        "inverse_warp: amplitude dips below the conditioning floor 1e-6 * max");
}

}  // namespace

PhaseProfile make_profile(const rvec& psi) {
  const size_t L = psi.size();
  if (L == 0) throw std::invalid_argument("make_profile: empty curve");
  double lo = psi[0], hi = psi[0];
  for (double v : psi) {
    if (!(v > 0.0)) throw std::invalid_argument("make_profile: curve must be positive");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  PhaseProfile prof;
  prof.m = 0.5 * (lo + hi);

  prof.p.assign(L + 1, 0.0);
  const double h = 1.0 / (static_cast<double>(L) * prof.m);
  for (size_t l = 0; l < L; ++l) {
    const double next = psi[(l + 1) % L];  // periodic closure for the last panel
    prof.p[l + 1] = prof.p[l] + 0.5 * (psi[l] + next) * h;
  }
  prof.p1 = prof.p[L];

  // Inverse profile on the uniform grid i * p1 / L, via monotone interpolation
  // of the (p, t) pairs.
  rvec tk = wrap_knots(L);
  Pchip inv(prof.p, tk);
  prof.warp_t.assign(L, 0.0);
  for (size_t i = 0; i < L; ++i) {
    double t = inv(static_cast<double>(i) * prof.p1 / static_cast<double>(L));
    prof.warp_t[i] = std::clamp(t, 0.0, 1.0);
  }
  return prof;
}

cvec inverse_warp(const cvec& r, const PhaseProfile& prof, const rvec& amp) {
  const size_t L = r.size();
  if (prof.size() != L || amp.size() != L)
    throw std::invalid_argument("inverse_warp: size mismatch");
  check_amp(amp);
  rvec tk = wrap_knots(L);
  CPchip rr(tk, wrap_values(r));
  Pchip aa(tk, wrap_values(amp));
  cvec h(L);
  for (size_t i = 0; i < L; ++i) {
    const double t = prof.warp_t[i];
    h[i] = rr(t) / aa(t);
  }
  return h;
}

DsaResult pursue(const cvec& f, const std::vector<PhaseProfile>& profiles,
                 const std::vector<rvec>& amps, double eps, size_t max_iter, size_t pad) {
  const size_t L = f.size();
  const size_t K = profiles.size();
  if (K == 0) throw std::invalid_argument("pursue: need at least one profile");
  if (amps.size() != K) throw std::invalid_argument("pursue: one amplitude vector per profile");
  if (!is_power_of_two(L)) throw std::invalid_argument("pursue: length must be a power of two");
  if (pad == 0 || !is_power_of_two(pad)) throw std::invalid_argument("pursue: pad must be 2^k");
  for (size_t k = 0; k < K; ++k) {
    if (profiles[k].size() != L || amps[k].size() != L)
      throw std::invalid_argument("pursue: profile/amplitude size mismatch");
    check_amp(amps[k]);
  }

  // Per-profile precomputation: amplitude read at the warp points, and the
  // atom's energy sum |amp|^2 (the atom modulus is the amplitude itself).
  const rvec tk = wrap_knots(L);
  std::vector<rvec> amp_w(K);
  rvec atom_energy(K, 0.0);
  for (size_t k = 0; k < K; ++k) {
    Pchip aa(tk, wrap_values(amps[k]));
    amp_w[k].assign(L, 0.0);
    for (size_t i = 0; i < L; ++i) amp_w[k][i] = aa(profiles[k].warp_t[i]);
    double e = 0.0;
    for (double a : amps[k]) e += a * a;
    atom_energy[k] = e;
    if (!(e > 0.0)) throw std::runtime_error("pursue: degenerate atom (zero amplitude)");
  }

  DsaResult res;
  res.modes.assign(K, cvec(L, cplx(0.0, 0.0)));
  res.tables.resize(K);
  for (size_t k = 0; k < K; ++k) res.tables[k].mode_index = static_cast<int>(k);
  res.residual = f;
  res.residual_history.push_back(l2_norm(res.residual));

  const size_t n = L * pad;
  cvec hpad(n);
  while (res.iterations < max_iter) {
    if (res.residual_history.back() <= eps) {
      res.converged = true;
      break;
    }

    CPchip rr(tk, wrap_values(res.residual));
    double best = -1.0;
    size_t best_k = 0;
    long best_xi = 0;
    for (size_t k = 0; k < K; ++k) {
      std::fill(hpad.begin(), hpad.end(), cplx(0.0, 0.0));
      for (size_t i = 0; i < L; ++i) {
        const double t = profiles[k].warp_t[i];
        hpad[i] = rr(t) / amp_w[k][i];
      }
      fft_inplace(hpad, false);
      for (size_t b = 0; b < n; ++b) {
        const double mag = std::abs(hpad[b]);
        if (mag > best) {
          best = mag;
          best_k = k;
          best_xi = signed_freq(b, n);
        }
      }
    }

    const double tau =
        static_cast<double>(best_xi) / (static_cast<double>(pad) * profiles[best_k].p1);

    cvec atom(L);
    cplx inner(0.0, 0.0);
    for (size_t l = 0; l < L; ++l) {
      const double ph = two_pi * tau * profiles[best_k].p[l];
      atom[l] = amps[best_k][l] * cplx(std::cos(ph), std::sin(ph));
      inner += res.residual[l] * std::conj(atom[l]);
    }
    const cplx beta = inner / atom_energy[best_k];

    for (size_t l = 0; l < L; ++l) {
      res.residual[l] -= beta * atom[l];
      res.modes[best_k][l] += beta * atom[l];
    }

    auto& entries = res.tables[best_k].entries;
    bool merged = false;
    for (auto& e : entries) {
      if (std::abs(e.tau - tau) < 1e-12) {
        e.beta += beta;
        merged = true;
        break;
      }
    }
    if (!merged) entries.push_back({tau, beta});

    ++res.iterations;
    const double norm = l2_norm(res.residual);
    if (norm >= res.residual_history.back()) {
      std::ostringstream msg;
      msg << "pursue: residual failed to decrease at iteration " << res.iterations << " (norm "
          << norm << " vs " << res.residual_history.back() << ", mode " << best_k << ", tau "
          << tau << ", |beta| " << std::abs(beta) << ")";
      throw std::runtime_error(msg.str());
    }
    res.residual_history.push_back(norm);
  }
  if (!res.converged && res.residual_history.back() <= eps) res.converged = true;
  return res;
}

std::vector<SpectrumLine> spectrum(const SpectrumTable& table, double m, int n_k) {
  if (!(m > 0.0)) throw std::invalid_argument("spectrum: normalizer must be positive");
  std::vector<SpectrumLine> out;
  if (table.entries.empty()) return out;
  const double seed = std::abs(table.entries.front().beta);
  const double denom = seed > 0.0 ? seed : 1.0;
  out.reserve(table.entries.size());
  for (const auto& e : table.entries)
    out.push_back({e.tau * static_cast<double>(n_k) / m, std::abs(e.beta) / denom});
  return out;
}

}  // namespace gmd
