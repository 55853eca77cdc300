#include "gmd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gmd {

DecomposeResult decompose(const SampledSignal& f, const PipelineConfig& cfg) {
  DecomposeResult res;
  res.analytic_extended = is_real_signal(f);
  res.input = res.analytic_extended ? to_analytic(f) : f;
  const size_t L = res.input.size();

  res.plane = forward(res.input, build_mother(cfg.d), make_ladder(L, cfg.s, cfg.d, cfg.overlap),
                      /*want_derivative=*/true);
  res.energy = energy_ratio(res.plane, res.input);

  const std::vector<cvec> vf = if_info(res.plane);
  res.squeezed = squeeze(res.plane, vf, cfg.epsilon, /*vmax=*/0.0, cfg.vbin);

  res.supports = extract_supports(res.squeezed, cfg.ridge_level, cfg.ridge_floor);
  res.curves.reserve(res.supports.size());
  for (const RidgeSupport& S : res.supports) {
    IFCurve c = condense(res.squeezed, S);
    smooth_curve(c, cfg.smooth_cutoff);
    res.curves.push_back(std::move(c));
  }

  res.classification = classify(res.curves, cfg.seed, cfg.sigma);
  const int K = res.classification.K;
  res.class_members.assign(static_cast<size_t>(K), {});
  for (size_t i = 0; i < res.curves.size(); ++i)
    res.class_members[static_cast<size_t>(res.classification.labels[i])].push_back(i);

  res.fundamentals.reserve(static_cast<size_t>(K));
  res.gmdwp_modes.reserve(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    std::vector<IFCurve> class_curves;
    std::vector<RidgeSupport> class_supports;
    for (size_t i : res.class_members[static_cast<size_t>(k)]) {
      class_curves.push_back(res.curves[i]);
      class_supports.push_back(res.supports[i]);
    }
    FundamentalResult fund = fundamental(class_curves, cfg.fundamental_cap);
    res.gmdwp_modes.push_back(build_mode(res.plane, res.squeezed, class_supports, fund));
    res.fundamentals.push_back(std::move(fund));
  }

  res.gmdwp_shapes.reserve(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    const ModeEstimate& m = res.gmdwp_modes[static_cast<size_t>(k)];
    res.gmdwp_shapes.push_back(
        shape_estimate(m.signal, m.amplitude, m.fundamental, cfg.shape_samples));
  }

  // DSA: profiles from the fundamentals, atoms carried by the low-passed
  // amplitude envelopes (clamped slightly above zero so warping stays
  // well conditioned when smoothing undershoots).
  std::vector<PhaseProfile> profiles;
  profiles.reserve(static_cast<size_t>(K));
  res.dsa_amps.reserve(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    const ModeEstimate& m = res.gmdwp_modes[static_cast<size_t>(k)];
    profiles.push_back(make_profile(m.fundamental));
    rvec amp = cfg.amp_cutoff > 0 ? smooth_periodic(m.amplitude, cfg.amp_cutoff) : m.amplitude;
    double amax = 0.0;
    for (double a : amp) amax = std::max(amax, a);
    if (!(amax > 0.0)) throw std::runtime_error("decompose: mode amplitude vanished");
    for (double& a : amp) a = std::max(a, 1e-5 * amax);
    res.dsa_amps.push_back(std::move(amp));
  }

  const double eps = cfg.dsa_eps_abs > 0.0 ? cfg.dsa_eps_abs
                                           : cfg.dsa_eps_rel * l2_norm(res.input.samples);
  res.dsa = pursue(res.input.samples, profiles, res.dsa_amps, eps, cfg.dsa_max_iter, cfg.dsa_pad);

  res.dsa_shapes.reserve(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    const ModeEstimate& m = res.gmdwp_modes[static_cast<size_t>(k)];
    res.dsa_shapes.push_back(shape_estimate(res.dsa.modes[static_cast<size_t>(k)],
                                            res.dsa_amps[static_cast<size_t>(k)], m.fundamental,
                                            cfg.shape_samples));
  }
  return res;
}

}  // namespace gmd
