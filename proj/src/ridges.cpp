#include "gmd/ridges.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmd/fft.hpp"

namespace gmd {

std::vector<RidgeSupport> extract_supports(const SqueezedPlane& T, double level,
                                           double floor_frac) {
  if (level <= 0.0 || level >= 1.0)
    throw std::invalid_argument("extract_supports: level must lie in (0,1)");
  const size_t nv = T.vbins();
  const size_t L = T.cols();
  if (nv == 0 || L == 0) throw std::invalid_argument("extract_supports: empty plane");

  double emax = 0.0;
  double total = 0.0, comp = 0.0;
  for (const auto& row : T.energy) {
    for (double e : row) {
      emax = std::max(emax, e);
      const double y = e - comp;
      const double t = total + y;
      comp = (t - total) - y;
      total = t;
    }
  }
  if (emax <= 0.0) throw std::runtime_error("extract_supports: squeezed plane holds no energy");
  const double thresh = level * emax;

  std::vector<uint8_t> active(nv * L, 0);
  for (size_t i = 0; i < nv; ++i)
    for (size_t l = 0; l < L; ++l)
      if (T.energy[i][l] >= thresh) active[i * L + l] = 1;

  std::vector<RidgeSupport> out;
  std::vector<std::pair<int32_t, int32_t>> stack;
  for (size_t i0 = 0; i0 < nv; ++i0) {
    for (size_t l0 = 0; l0 < L; ++l0) {
      if (!active[i0 * L + l0]) continue;
      RidgeSupport S;
      active[i0 * L + l0] = 0;
      stack.clear();
      stack.emplace_back(static_cast<int32_t>(i0), static_cast<int32_t>(l0));
      while (!stack.empty()) {
        auto [i, l] = stack.back();
        stack.pop_back();
        S.cells.emplace_back(i, l);
        S.energy += T.energy[static_cast<size_t>(i)][static_cast<size_t>(l)];
        for (int di = -1; di <= 1; ++di) {
          const int ni = i + di;
          if (ni < 0 || ni >= static_cast<int>(nv)) continue;
          for (int dl = -1; dl <= 1; ++dl) {
            if (di == 0 && dl == 0) continue;
            const int nl = (l + dl + static_cast<int>(L)) % static_cast<int>(L);
            uint8_t& cell = active[static_cast<size_t>(ni) * L + static_cast<size_t>(nl)];
            if (!cell) continue;
            cell = 0;
            stack.emplace_back(ni, nl);
          }
        }
      }
      if (S.energy >= floor_frac * total) out.push_back(std::move(S));
    }
  }
  if (out.empty())
    throw std::runtime_error("extract_supports: no support exceeds the energy floor");

  std::sort(out.begin(), out.end(),
            [](const RidgeSupport& a, const RidgeSupport& b) { return a.energy > b.energy; });
  for (size_t k = 0; k < out.size(); ++k) {
    out[k].label = static_cast<int>(k);
    std::sort(out[k].cells.begin(), out[k].cells.end());
  }
  return out;
}

IFCurve condense(const SqueezedPlane& T, const RidgeSupport& S) {
  const size_t L = T.cols();
  IFCurve c;
  c.values.assign(L, 0.0);
  c.weights.assign(L, 0.0);
  c.gap.assign(L, 1);
  c.support_label = S.label;
  c.energy = S.energy;

  rvec num(L, 0.0);
  for (const auto& [i, l] : S.cells) {
    const double e = T.energy[static_cast<size_t>(i)][static_cast<size_t>(l)];
    num[static_cast<size_t>(l)] += e * T.bin_center(static_cast<size_t>(i));
    c.weights[static_cast<size_t>(l)] += e;
  }
  size_t filled = 0;
  for (size_t l = 0; l < L; ++l) {
    if (c.weights[l] > 0.0) {
      c.values[l] = num[l] / c.weights[l];
      c.gap[l] = 0;
      ++filled;
    }
  }
  if (filled == 0) throw std::runtime_error("condense: support touches no column");
  if (filled == L) return c;
  if (filled == 1) {
    const size_t l1 =
        static_cast<size_t>(std::find(c.gap.begin(), c.gap.end(), 0) - c.gap.begin());
    std::fill(c.values.begin(), c.values.end(), c.values[l1]);
    return c;
  }

  // Fill gap runs by linear interpolation between the flanking known columns,
  // treating the time axis as circular.
  for (size_t l = 0; l < L; ++l) {
    if (!c.gap[l]) continue;
    size_t left = l;
    do { left = (left + L - 1) % L; } while (c.gap[left]);
    size_t right = l;
    do { right = (right + 1) % L; } while (c.gap[right]);
    const size_t span = (right + L - left) % L;
    const size_t off = (l + L - left) % L;
    const double u = static_cast<double>(off) / static_cast<double>(span);
    c.values[l] = (1.0 - u) * c.values[left] + u * c.values[right];
  }
  return c;
}

rvec smooth_periodic(const rvec& x, size_t cutoff) {
  if (cutoff == 0) return x;
  const size_t L = x.size();
  if (!is_power_of_two(L)) throw std::invalid_argument("smooth_periodic: length must be 2^k");
  cvec z(L);
  for (size_t l = 0; l < L; ++l) z[l] = cplx(x[l], 0.0);
  cvec zh = dft(z);
  for (size_t i = 0; i < L; ++i) {
    const long xi = signed_freq(i, L);
    if (static_cast<size_t>(std::llabs(xi)) > cutoff) zh[i] = cplx(0.0, 0.0);
  }
  cvec back = idft(zh);
  rvec out(L);
  for (size_t l = 0; l < L; ++l) out[l] = back[l].real();
  return out;
}

}  // namespace gmd
