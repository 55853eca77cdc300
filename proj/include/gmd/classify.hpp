#pragma once

#include <cstdint>

#include "gmd/ridges.hpp"

namespace gmd {

// Result of grouping IF curves into modes by spectral clustering.
struct ClassifyResult {
  int K = 0;
  std::vector<int> labels;     // per curve, canonicalized to first-occurrence order
  std::vector<rvec> residual;  // pairwise affine-fit RMS residuals R[k][j]
  rvec eigenvalues;            // normalized-Laplacian spectrum, descending
  double sigma = 0.0;          // affinity bandwidth (median off-diagonal residual)
};

// R[k][j] = RMS residual of the least-squares affine fit (in t) to the ratio
// (psi_k * m_j) / (psi_j * m_k), with m the sup norms. Columns where either
// curve was gap-filled are excluded when enough genuine columns remain.
std::vector<rvec> residual_matrix(const std::vector<IFCurve>& curves);

// Spectral clustering: affinity A_kj = g(R_kj) + g(R_jk) with
// g(x) = exp(-x^2 / 2 sigma^2); symmetric normalized Laplacian; eigenvalues
// sigma_1 >= ... >= sigma_n; K = n - argmax_i(sigma_i - sigma_{i+1}); then
// row-normalized eigenvector embedding with seeded k-means. sigma_override
// replaces the median-of-off-diagonal bandwidth when positive.
ClassifyResult classify(const std::vector<IFCurve>& curves, uint64_t seed = 12345,
                        double sigma_override = 0.0);

// Fundamental IF estimate for one class of curves.
struct FundamentalResult {
  rvec curve;      // estimated fundamental g(t)
  int n0 = 1;      // divisor applied to the reference curve
  size_t ref = 0;  // index within the class of the minimum-sup-norm curve
  rvec objective;  // misfit f(n) for n = 1..cap
  bool low_confidence = false;  // single-curve class: n0 = 1 by convention
};

// Picks the minimum-sup-norm curve psi_1, then the smallest n minimizing
// f(n) = mean over the other curves and columns of the squared distance of
// n * psi_i / psi_1 to the nearest integer; returns psi_1 / n0.
FundamentalResult fundamental(const std::vector<IFCurve>& class_curves, int cap = 32);

}  // namespace gmd
