#pragma once

#include <filesystem>
#include <string>

#include "gmd/dsa.hpp"
#include "gmd/ridges.hpp"
#include "gmd/signal.hpp"
#include "gmd/squeeze.hpp"
#include "gmd/wavepacket.hpp"

namespace gmd {

// All text output uses %.17g so round-trips and reruns are byte-identical.

// Signal CSV: header "t,re,im", one row per sample at t = l/L.
void write_signal_csv(const std::filesystem::path& path, const cvec& samples);
cvec read_signal_csv(const std::filesystem::path& path);

// IF curve CSV: header "b,psi,weight".
void write_curve_csv(const std::filesystem::path& path, const IFCurve& curve);

// Ridge supports as a sparse labeled mask: header "v,b,label".
void write_supports_csv(const std::filesystem::path& path,
                        const std::vector<RidgeSupport>& supports);

// Wave-packet plane as a log10-energy plot grid: one row per band, first
// column the band center, then L values log10(|W|^2) floored at -30.
void write_plane_csv(const std::filesystem::path& path, const WavePacketPlane& plane);

// Squeezed plane as sparse nonzero cells: header "v,b,energy".
void write_squeezed_csv(const std::filesystem::path& path, const SqueezedPlane& T);

// Spectrum table: header "tau,harmonic,d,re_beta,im_beta"; harmonic and d via
// the mode's normalizer m and lowest index n_k.
void write_spectrum_csv(const std::filesystem::path& path, const SpectrumTable& table, double m,
                        int n_k);

// Generic real-vector CSV with a caller-supplied single-column header.
void write_series_csv(const std::filesystem::path& path, const std::string& header,
                      const rvec& values);

// Writes `text` (pre-serialized JSON) next to an artifact as
// "<artifact>.meta.json" or to an explicit path.
void write_text(const std::filesystem::path& path, const std::string& text);

std::string format_double(double x);  // %.17g

}  // namespace gmd
