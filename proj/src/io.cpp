#include "gmd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gmd {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);  // binary: byte-identical across platforms
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_signal_csv(const std::filesystem::path& path, const cvec& samples) {
  std::ofstream out = open_out(path);
  out << "t,re,im\n";
  const size_t L = samples.size();
  for (size_t l = 0; l < L; ++l) {
    const double t = static_cast<double>(l) / static_cast<double>(L);
    out << format_double(t) << ',' << format_double(samples[l].real()) << ','
        << format_double(samples[l].imag()) << '\n';
  }
}

cvec read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  cvec samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.back() == '\r') line.pop_back();
    std::istringstream row(line);
    std::string t, re, im;
    if (!std::getline(row, t, ',') || !std::getline(row, re, ',') || !std::getline(row, im, ','))
      continue;
    char* end = nullptr;
    const double revd = std::strtod(re.c_str(), &end);
    if (end == re.c_str()) continue;  // header or malformed row
    const double imvd = std::strtod(im.c_str(), nullptr);
    samples.emplace_back(revd, imvd);
  }
  if (samples.empty()) throw std::runtime_error("no samples in " + path.string());
  return samples;
}

void write_curve_csv(const std::filesystem::path& path, const IFCurve& curve) {
  std::ofstream out = open_out(path);
  out << "b,psi,weight\n";
  const size_t L = curve.values.size();
  for (size_t l = 0; l < L; ++l) {
    const double b = static_cast<double>(l) / static_cast<double>(L);
    out << format_double(b) << ',' << format_double(curve.values[l]) << ','
        << format_double(curve.weights[l]) << '\n';
  }
}

void write_supports_csv(const std::filesystem::path& path,
                        const std::vector<RidgeSupport>& supports) {
  std::ofstream out = open_out(path);
  out << "v,b,label\n";
  for (const RidgeSupport& S : supports)
    for (const auto& [v, b] : S.cells) out << v << ',' << b << ',' << S.label << '\n';
}

void write_plane_csv(const std::filesystem::path& path, const WavePacketPlane& plane) {
  std::ofstream out = open_out(path);
  out << "a";
  for (size_t l = 0; l < plane.L; ++l)
    out << ",b" << l;
  out << '\n';
  for (size_t j = 0; j < plane.ladder.bands(); ++j) {
    out << format_double(plane.ladder.centers[j]);
    for (size_t l = 0; l < plane.L; ++l) {
      const double e = std::norm(plane.coeffs[j][l]);
      const double v = e > 0.0 ? std::max(std::log10(e), -30.0) : -30.0;
      out << ',' << format_double(v);
    }
    out << '\n';
  }
}

void write_squeezed_csv(const std::filesystem::path& path, const SqueezedPlane& T) {
  std::ofstream out = open_out(path);
  out << "v,b,energy\n";
  const size_t nv = T.vbins();
  const size_t L = T.cols();
  for (size_t i = 0; i < nv; ++i)
    for (size_t l = 0; l < L; ++l)
      if (T.energy[i][l] > 0.0)
        out << format_double(T.bin_center(i)) << ',' << l << ','
            << format_double(T.energy[i][l]) << '\n';
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectrumTable& table, double m,
                        int n_k) {
  std::ofstream out = open_out(path);
  out << "tau,harmonic,d,re_beta,im_beta\n";
  const auto lines = spectrum(table, m, n_k);
  for (size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    out << format_double(e.tau) << ',' << format_double(lines[i].harmonic) << ','
        << format_double(lines[i].d) << ',' << format_double(e.beta.real()) << ','
        << format_double(e.beta.imag()) << '\n';
  }
}

void write_series_csv(const std::filesystem::path& path, const std::string& header,
                      const rvec& values) {
  std::ofstream out = open_out(path);
  out << header << '\n';
  for (double v : values) out << format_double(v) << '\n';
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
}

}  // namespace gmd
