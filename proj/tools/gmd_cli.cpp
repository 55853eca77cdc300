#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "gmd/io.hpp"
#include "gmd/pipeline.hpp"
#include "gmd/resolution.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

json config_to_json(const gmd::PipelineConfig& cfg) {
  json j;
  j["s"] = cfg.s;
  j["d"] = cfg.d;
  j["epsilon"] = cfg.epsilon;
  j["L"] = cfg.L;
  j["overlap"] = cfg.overlap;
  j["vbin"] = cfg.vbin;
  j["ridge_level"] = cfg.ridge_level;
  j["ridge_floor"] = cfg.ridge_floor;
  j["smooth_cutoff"] = cfg.smooth_cutoff;
  j["sigma"] = cfg.sigma;
  j["fundamental_cap"] = cfg.fundamental_cap;
  j["dsa_eps_rel"] = cfg.dsa_eps_rel;
  j["dsa_eps_abs"] = cfg.dsa_eps_abs;
  j["dsa_max_iter"] = cfg.dsa_max_iter;
  j["dsa_pad"] = cfg.dsa_pad;
  j["amp_cutoff"] = cfg.amp_cutoff;
  j["shape_samples"] = cfg.shape_samples;
  j["seed"] = cfg.seed;
  return j;
}

void config_from_json(const json& j, gmd::PipelineConfig& cfg) {
  if (j.contains("s")) cfg.s = j["s"].get<double>();
  if (j.contains("d")) cfg.d = j["d"].get<double>();
  if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
  if (j.contains("L")) cfg.L = j["L"].get<size_t>();
  if (j.contains("overlap")) cfg.overlap = j["overlap"].get<double>();
  if (j.contains("vbin")) cfg.vbin = j["vbin"].get<double>();
  if (j.contains("ridge_level")) cfg.ridge_level = j["ridge_level"].get<double>();
  if (j.contains("ridge_floor")) cfg.ridge_floor = j["ridge_floor"].get<double>();
  if (j.contains("smooth_cutoff")) cfg.smooth_cutoff = j["smooth_cutoff"].get<size_t>();
  if (j.contains("sigma")) cfg.sigma = j["sigma"].get<double>();
  if (j.contains("fundamental_cap")) cfg.fundamental_cap = j["fundamental_cap"].get<int>();
  if (j.contains("dsa_eps_rel")) cfg.dsa_eps_rel = j["dsa_eps_rel"].get<double>();
  if (j.contains("dsa_eps_abs")) cfg.dsa_eps_abs = j["dsa_eps_abs"].get<double>();
  if (j.contains("dsa_max_iter")) cfg.dsa_max_iter = j["dsa_max_iter"].get<size_t>();
  if (j.contains("dsa_pad")) cfg.dsa_pad = j["dsa_pad"].get<size_t>();
  if (j.contains("amp_cutoff")) cfg.amp_cutoff = j["amp_cutoff"].get<size_t>();
  if (j.contains("shape_samples")) cfg.shape_samples = j["shape_samples"].get<size_t>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
}

void write_sidecar(const fs::path& artifact, const std::string& kind,
                   const gmd::PipelineConfig& cfg, json extra = json::object()) {
  json meta;
  meta["artifact"] = artifact.filename().string();
  meta["kind"] = kind;
  meta["config"] = config_to_json(cfg);
  for (auto& [k, v] : extra.items()) meta[k] = v;
  gmd::write_text(artifact.string() + ".meta.json", meta.dump(2) + "\n");
}

// Binds every config field as a flag on `cmd`; values are applied over the
// config-file contents after parsing, so explicit flags always win.
struct ConfigFlags {
  gmd::PipelineConfig flags;  // raw flag values
  std::string config_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file (flags override it)");
    cmd->add_option("--s", flags.s, "scaling parameter s");
    cmd->add_option("--d", flags.d, "mother packet support radius d");
    cmd->add_option("--epsilon", flags.epsilon, "squeeze gate threshold");
    cmd->add_option("--samples", flags.L, "sample count L (power of two)");
    cmd->add_option("--overlap", flags.overlap, "ladder overlap fraction");
    cmd->add_option("--vbin", flags.vbin, "squeezed-frequency bin width");
    cmd->add_option("--ridge-level", flags.ridge_level, "support threshold vs max cell");
    cmd->add_option("--ridge-floor", flags.ridge_floor, "support energy floor vs total");
    cmd->add_option("--smooth-cutoff", flags.smooth_cutoff, "IF-curve low-pass cutoff");
    cmd->add_option("--sigma", flags.sigma, "affinity bandwidth (0 = median)");
    cmd->add_option("--fundamental-cap", flags.fundamental_cap, "divisor search cap");
    cmd->add_option("--dsa-eps", flags.dsa_eps_rel, "pursuit stop, fraction of ||f||");
    cmd->add_option("--dsa-eps-abs", flags.dsa_eps_abs, "pursuit stop, absolute norm");
    cmd->add_option("--max-iter", flags.dsa_max_iter, "pursuit iteration cap");
    cmd->add_option("--dsa-pad", flags.dsa_pad, "pursuit DFT padding factor");
    cmd->add_option("--amp-cutoff", flags.amp_cutoff, "atom amplitude low-pass cutoff");
    cmd->add_option("--shape-samples", flags.shape_samples, "shape samples per period");
    cmd->add_option("--seed", flags.seed, "RNG seed");
  }

  gmd::PipelineConfig resolve(CLI::App* cmd) const {
    gmd::PipelineConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw CLI::ValidationError("--config", "cannot open " + config_path);
      json j = json::parse(in);
      config_from_json(j, cfg);
    }
    auto take = [&](const std::string& name, auto member) {
      if (cmd->count(name) > 0) cfg.*member = flags.*member;
    };
    take("--s", &gmd::PipelineConfig::s);
    take("--d", &gmd::PipelineConfig::d);
    take("--epsilon", &gmd::PipelineConfig::epsilon);
    take("--samples", &gmd::PipelineConfig::L);
    take("--overlap", &gmd::PipelineConfig::overlap);
    take("--vbin", &gmd::PipelineConfig::vbin);
    take("--ridge-level", &gmd::PipelineConfig::ridge_level);
    take("--ridge-floor", &gmd::PipelineConfig::ridge_floor);
    take("--smooth-cutoff", &gmd::PipelineConfig::smooth_cutoff);
    take("--sigma", &gmd::PipelineConfig::sigma);
    take("--fundamental-cap", &gmd::PipelineConfig::fundamental_cap);
    take("--dsa-eps", &gmd::PipelineConfig::dsa_eps_rel);
    take("--dsa-eps-abs", &gmd::PipelineConfig::dsa_eps_abs);
    take("--max-iter", &gmd::PipelineConfig::dsa_max_iter);
    take("--dsa-pad", &gmd::PipelineConfig::dsa_pad);
    take("--amp-cutoff", &gmd::PipelineConfig::amp_cutoff);
    take("--shape-samples", &gmd::PipelineConfig::shape_samples);
    take("--seed", &gmd::PipelineConfig::seed);
    return cfg;
  }
};

json classification_json(const gmd::DecomposeResult& res) {
  json j;
  j["K"] = res.classification.K;
  j["labels"] = res.classification.labels;
  j["eigenvalues"] = res.classification.eigenvalues;
  j["sigma"] = res.classification.sigma;
  json classes = json::array();
  for (size_t k = 0; k < res.fundamentals.size(); ++k) {
    json c;
    c["n0"] = res.fundamentals[k].n0;
    c["low_confidence"] = res.fundamentals[k].low_confidence;
    c["members"] = res.class_members[k];
    c["fundamental_csv"] = "fundamentals/" + std::to_string(k) + ".csv";
    classes.push_back(c);
  }
  j["classes"] = classes;
  return j;
}

void emit_decompose(const fs::path& dir, const gmd::DecomposeResult& res,
                    const gmd::PipelineConfig& cfg) {
  fs::create_directories(dir);
  gmd::write_plane_csv(dir / "plane.csv", res.plane);
  write_sidecar(dir / "plane.csv", "wave-packet plane (log10 energy grid)", cfg);
  gmd::write_squeezed_csv(dir / "squeezed.csv", res.squeezed);
  write_sidecar(dir / "squeezed.csv", "squeezed plane (sparse cells)", cfg);
  gmd::write_supports_csv(dir / "supports.csv", res.supports);
  write_sidecar(dir / "supports.csv", "ridge supports (labeled mask)", cfg);

  for (size_t i = 0; i < res.curves.size(); ++i) {
    const fs::path p = dir / "curves" / (std::to_string(i) + ".csv");
    gmd::write_curve_csv(p, res.curves[i]);
    write_sidecar(p, "IF curve", cfg);
  }
  for (size_t k = 0; k < res.fundamentals.size(); ++k) {
    const fs::path p = dir / "fundamentals" / (std::to_string(k) + ".csv");
    gmd::write_series_csv(p, "g", res.fundamentals[k].curve);
    write_sidecar(p, "fundamental IF curve", cfg);
    const fs::path a = dir / "amps" / (std::to_string(k) + ".csv");
    gmd::write_series_csv(a, "amp", res.dsa_amps[k]);
    write_sidecar(a, "DSA atom amplitude", cfg);
  }
  for (size_t k = 0; k < res.dsa.modes.size(); ++k) {
    const fs::path p = dir / "modes" / (std::to_string(k) + ".csv");
    gmd::write_signal_csv(p, res.dsa.modes[k]);
    write_sidecar(p, "recovered mode (post-pursuit)", cfg);
    const fs::path s = dir / "spectrum" / (std::to_string(k) + ".csv");
    const double m = res.dsa.tables[k].entries.empty()
                         ? 1.0
                         : gmd::make_profile(res.gmdwp_modes[k].fundamental).m;
    gmd::write_spectrum_csv(s, res.dsa.tables[k], m, 1);
    write_sidecar(s, "mode spectrum table", cfg);
  }
  gmd::write_series_csv(dir / "residual_history.csv", "norm", res.dsa.residual_history);
  write_sidecar(dir / "residual_history.csv", "pursuit residual norms", cfg);

  json rep;
  rep["config"] = config_to_json(cfg);
  rep["L"] = res.input.size();
  rep["analytic_extended"] = res.analytic_extended;
  rep["bands"] = res.plane.ladder.bands();
  rep["energy_ratio"] = {{"lower", res.energy.lower},
                         {"upper", res.energy.upper},
                         {"ratio", res.energy.ratio},
                         {"low_freq_warning", res.energy.low_freq_warning}};
  rep["coarse_grid_warning"] = res.squeezed.coarse_grid_warning;
  json sup = json::array();
  for (const auto& S : res.supports)
    sup.push_back({{"label", S.label}, {"cells", S.cells.size()}, {"energy", S.energy}});
  rep["supports"] = sup;
  rep["classification"] = classification_json(res);
  rep["dsa"] = {{"iterations", res.dsa.iterations},
                {"converged", res.dsa.converged},
                {"final_residual_norm", res.dsa.residual_history.back()}};
  gmd::write_text(dir / "report.json", rep.dump(2) + "\n");
}

int run(int argc, char** argv) {
  CLI::App app{"general mode decomposition via synchrosqueezed wave packets"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "emit a built-in fixture signal");
  std::string fixture = "example1";
  double gen_N = 64.0;
  double snr_db = std::numeric_limits<double>::quiet_NaN();
  std::string gen_out = "signal.csv";
  gen->add_option("fixture", fixture, "example1|example2|example4|harmonic");
  gen->add_option("--N", gen_N, "tone level for the harmonic fixture");
  gen->add_option("--snr-db", snr_db, "add circular Gaussian noise at this SNR");
  gen->add_option("--out", gen_out, "output CSV path");
  ConfigFlags gen_cfg;
  gen_cfg.attach(gen);

  // transform
  auto* tr = app.add_subcommand("transform", "forward wave-packet transform");
  std::string tr_in, tr_out = "out";
  tr->add_option("--in", tr_in, "input signal CSV")->required();
  tr->add_option("--out", tr_out, "output directory");
  ConfigFlags tr_cfg;
  tr_cfg.attach(tr);

  // squeeze
  auto* sq = app.add_subcommand("squeeze", "synchrosqueezed energy plane");
  std::string sq_in, sq_out = "out";
  sq->add_option("--in", sq_in, "input signal CSV")->required();
  sq->add_option("--out", sq_out, "output directory");
  ConfigFlags sq_cfg;
  sq_cfg.attach(sq);

  // decompose
  auto* de = app.add_subcommand("decompose", "full general mode decomposition");
  std::string de_in, de_out = "out";
  de->add_option("--in", de_in, "input signal CSV")->required();
  de->add_option("--out", de_out, "output directory");
  ConfigFlags de_cfg;
  de_cfg.attach(de);

  // dsa
  auto* ds = app.add_subcommand("dsa", "warped greedy pursuit");
  std::string ds_in, ds_out = "out", ds_from;
  bool ds_identity = false;
  ds->add_option("--in", ds_in, "input signal CSV")->required();
  ds->add_option("--out", ds_out, "output directory");
  ds->add_option("--from-decompose", ds_from, "decompose output dir with fundamentals/ and amps/");
  ds->add_flag("--identity", ds_identity, "identity profile + unit amplitude (plain pursuit)");
  ConfigFlags ds_cfg;
  ds_cfg.attach(ds);

  // resolution
  auto* re = app.add_subcommand("resolution", "separability diagnostics");
  double re_N = 100.0;
  std::string re_out;
  re->add_option("--N", re_N, "tone level")->required();
  re->add_option("--out", re_out, "also write the JSON report here");
  ConfigFlags re_cfg;
  re_cfg.attach(re);

  // detrend
  auto* dt = app.add_subcommand("detrend", "remove the least-squares line");
  std::string dt_in, dt_out = "out";
  dt->add_option("--in", dt_in, "input signal CSV")->required();
  dt->add_option("--out", dt_out, "output directory");
  ConfigFlags dt_cfg;
  dt_cfg.attach(dt);

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    const gmd::PipelineConfig cfg = gen_cfg.resolve(gen);
    gmd::Fixture fx = gmd::make_fixture(fixture, cfg.L, gen_N);
    gmd::SampledSignal sig = fx.mixture;
    json extra;
    extra["fixture"] = fixture;
    if (!std::isnan(snr_db)) {
      sig = gmd::add_noise(fx.mixture, fx.modes, snr_db, cfg.seed);
      extra["snr_db"] = snr_db;
    }
    gmd::write_signal_csv(gen_out, sig.samples);
    write_sidecar(gen_out, "generated fixture signal", cfg, extra);
    std::cout << "wrote " << gen_out << " (" << sig.size() << " samples)\n";
    return 0;
  }

  if (tr->parsed()) {
    const gmd::PipelineConfig cfg = tr_cfg.resolve(tr);
    gmd::SampledSignal f{gmd::read_signal_csv(tr_in)};
    if (gmd::is_real_signal(f)) f = gmd::to_analytic(f);
    const auto plane = gmd::forward(f, gmd::build_mother(cfg.d),
                                    gmd::make_ladder(f.size(), cfg.s, cfg.d, cfg.overlap), false);
    fs::create_directories(tr_out);
    gmd::write_plane_csv(fs::path(tr_out) / "plane.csv", plane);
    write_sidecar(fs::path(tr_out) / "plane.csv", "wave-packet plane (log10 energy grid)", cfg);
    std::cout << "wrote " << tr_out << "/plane.csv (" << plane.ladder.bands() << " bands)\n";
    return 0;
  }

  if (sq->parsed()) {
    const gmd::PipelineConfig cfg = sq_cfg.resolve(sq);
    gmd::SampledSignal f{gmd::read_signal_csv(sq_in)};
    if (gmd::is_real_signal(f)) f = gmd::to_analytic(f);
    const auto plane = gmd::forward(f, gmd::build_mother(cfg.d),
                                    gmd::make_ladder(f.size(), cfg.s, cfg.d, cfg.overlap), true);
    const auto T = gmd::squeeze(plane, gmd::if_info(plane), cfg.epsilon, 0.0, cfg.vbin);
    fs::create_directories(sq_out);
    gmd::write_squeezed_csv(fs::path(sq_out) / "squeezed.csv", T);
    write_sidecar(fs::path(sq_out) / "squeezed.csv", "squeezed plane (sparse cells)", cfg);
    std::cout << "wrote " << sq_out << "/squeezed.csv\n";
    return 0;
  }

  if (de->parsed()) {
    const gmd::PipelineConfig cfg = de_cfg.resolve(de);
    gmd::SampledSignal f{gmd::read_signal_csv(de_in)};
    const gmd::DecomposeResult res = gmd::decompose(f, cfg);
    emit_decompose(de_out, res, cfg);
    std::cout << "wrote " << de_out << "/report.json (K=" << res.classification.K << ", "
              << res.supports.size() << " supports, " << res.dsa.iterations << " atoms)\n";
    return 0;
  }

  if (ds->parsed()) {
    const gmd::PipelineConfig cfg = ds_cfg.resolve(ds);
    gmd::SampledSignal f{gmd::read_signal_csv(ds_in)};
    if (gmd::is_real_signal(f)) f = gmd::to_analytic(f);
    const size_t L = f.size();
    std::vector<gmd::PhaseProfile> profiles;
    std::vector<gmd::rvec> amps;
    if (ds_identity != ds_from.empty())
      throw CLI::ValidationError("dsa", "pass exactly one of --identity / --from-decompose");
    if (ds_identity) {
      profiles.push_back(gmd::make_profile(gmd::rvec(L, 1.0)));
      amps.emplace_back(L, 1.0);
    } else {
      // fundamentals/ and amps/ hold single-column series (one header line).
      const auto read_series = [](const fs::path& p) {
        std::ifstream in(p);
        if (!in) throw CLI::ValidationError("dsa", "missing " + p.string());
        gmd::rvec v;
        std::string line;
        while (std::getline(in, line)) {
          char* end = nullptr;
          const double x = std::strtod(line.c_str(), &end);
          if (end != line.c_str()) v.push_back(x);
        }
        return v;
      };
      for (size_t k = 0;; ++k) {
        const fs::path fp = fs::path(ds_from) / "fundamentals" / (std::to_string(k) + ".csv");
        const fs::path ap = fs::path(ds_from) / "amps" / (std::to_string(k) + ".csv");
        if (!fs::exists(fp)) break;
        gmd::rvec g = read_series(fp);
        gmd::rvec a = read_series(ap);
        if (g.size() != L || a.size() != L)
          throw CLI::ValidationError("dsa", "profile length mismatch vs signal");
        profiles.push_back(gmd::make_profile(g));
        amps.push_back(std::move(a));
      }
      if (profiles.empty())
        throw CLI::ValidationError("dsa", "no fundamentals found in " + ds_from);
    }
    const double eps = cfg.dsa_eps_abs > 0.0 ? cfg.dsa_eps_abs
                                             : cfg.dsa_eps_rel * gmd::l2_norm(f.samples);
    const gmd::DsaResult res =
        gmd::pursue(f.samples, profiles, amps, eps, cfg.dsa_max_iter, cfg.dsa_pad);
    fs::create_directories(ds_out);
    for (size_t k = 0; k < res.modes.size(); ++k) {
      const fs::path p = fs::path(ds_out) / "modes" / (std::to_string(k) + ".csv");
      gmd::write_signal_csv(p, res.modes[k]);
      write_sidecar(p, "recovered mode (post-pursuit)", cfg);
      const fs::path s = fs::path(ds_out) / "spectrum" / (std::to_string(k) + ".csv");
      gmd::write_spectrum_csv(s, res.tables[k], profiles[k].m, 1);
      write_sidecar(s, "mode spectrum table", cfg);
    }
    gmd::write_series_csv(fs::path(ds_out) / "residual_history.csv", "norm",
                          res.residual_history);
    write_sidecar(fs::path(ds_out) / "residual_history.csv", "pursuit residual norms", cfg);
    std::cout << "pursuit: " << res.iterations << " atoms, final residual "
              << res.residual_history.back() << (res.converged ? " (converged)" : "") << "\n";
    return 0;
  }

  if (re->parsed()) {
    const gmd::PipelineConfig cfg = re_cfg.resolve(re);
    const gmd::ResolutionReport rep = gmd::resolution_report(re_N, cfg.d, cfg.s);
    json j;
    j["N"] = rep.N;
    j["s"] = rep.s;
    j["d"] = rep.d;
    j["a_star"] = rep.a_star;
    j["lambda0"] = rep.lambda0;
    j["n0"] = rep.n0;
    j["multiscale_gap"] = rep.multiscale_gap;
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!re_out.empty()) gmd::write_text(re_out, text);
    return 0;
  }

  if (dt->parsed()) {
    const gmd::PipelineConfig cfg = dt_cfg.resolve(dt);
    const gmd::cvec f = gmd::read_signal_csv(dt_in);
    const gmd::DetrendResult res = gmd::detrend(f);
    fs::create_directories(dt_out);
    gmd::write_signal_csv(fs::path(dt_out) / "detrended.csv", res.detrended);
    write_sidecar(fs::path(dt_out) / "detrended.csv", "signal minus least-squares line", cfg);
    gmd::write_signal_csv(fs::path(dt_out) / "trend.csv", res.trend);
    write_sidecar(fs::path(dt_out) / "trend.csv", "least-squares line", cfg);
    std::cout << "wrote " << dt_out << "/detrended.csv and trend.csv\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
