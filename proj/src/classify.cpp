#include "gmd/classify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gmd {

namespace {

double sup_norm(const rvec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// RMS residual of the best affine fit y ~ a + b*t over the selected columns.
double affine_residual(const rvec& y, const std::vector<uint8_t>& use, size_t count) {
  const size_t L = y.size();
  double sw = 0, st = 0, stt = 0, sy = 0, sty = 0;
  for (size_t l = 0; l < L; ++l) {
    if (!use[l]) continue;
    const double t = static_cast<double>(l) / static_cast<double>(L);
    sw += 1.0;
    st += t;
    stt += t * t;
    sy += y[l];
    sty += t * y[l];
  }
  const double det = sw * stt - st * st;
  double a, b;
  if (std::abs(det) < 1e-30) {  // degenerate abscissas: constant fit
    a = sy / sw;
    b = 0.0;
  } else {
    b = (sw * sty - st * sy) / det;
    a = (sy - b * st) / sw;
  }
  double ss = 0.0;
  for (size_t l = 0; l < L; ++l) {
    if (!use[l]) continue;
    const double t = static_cast<double>(l) / static_cast<double>(L);
    const double r = y[l] - a - b * t;
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(count));
}

double median(rvec v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Seeded k-means with k-means++ initialization on the rows of U.
std::vector<int> kmeans(const Eigen::MatrixXd& U, int K, uint64_t seed) {
  const int n = static_cast<int>(U.rows());
  std::mt19937_64 rng(seed);
  std::vector<int> best_labels(n, 0);
  double best_inertia = std::numeric_limits<double>::infinity();

  for (int rep = 0; rep < 8; ++rep) {
    Eigen::MatrixXd centers(K, U.cols());
    centers.row(0) = U.row(static_cast<int>(rand_u01(rng) * n) % n);
    rvec d2(n);
    for (int k = 1; k < K; ++k) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) dmin = std::min(dmin, (U.row(i) - centers.row(c)).squaredNorm());
        d2[i] = dmin;
        total += dmin;
      }
      if (total <= 0.0) {
        centers.row(k) = U.row(static_cast<int>(rand_u01(rng) * n) % n);
        continue;
      }
      double pick = rand_u01(rng) * total;
      int chosen = n - 1;
      for (int i = 0; i < n; ++i) {
        pick -= d2[i];
        if (pick <= 0.0) {
          chosen = i;
          break;
        }
      }
      centers.row(k) = U.row(chosen);
    }

    std::vector<int> labels(n, -1);
    for (int iter = 0; iter < 100; ++iter) {
      bool changed = false;
      for (int i = 0; i < n; ++i) {
        int arg = 0;
        double dmin = std::numeric_limits<double>::infinity();
        for (int c = 0; c < K; ++c) {
          const double d = (U.row(i) - centers.row(c)).squaredNorm();
          if (d < dmin) {
            dmin = d;
            arg = c;
          }
        }
        if (labels[i] != arg) {
          labels[i] = arg;
          changed = true;
        }
      }
      if (!changed) break;
      for (int c = 0; c < K; ++c) {
        Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(U.cols());
        int count = 0;
        for (int i = 0; i < n; ++i)
          if (labels[i] == c) {
            mean += U.row(i);
            ++count;
          }
        if (count > 0) {
          centers.row(c) = mean / count;
        } else {
          // Re-seed an empty cluster at the point farthest from its center.
          int far = 0;
          double dmax = -1.0;
          for (int i = 0; i < n; ++i) {
            const double d = (U.row(i) - centers.row(labels[i])).squaredNorm();
            if (d > dmax) {
              dmax = d;
              far = i;
            }
          }
          centers.row(c) = U.row(far);
          labels[far] = c;
        }
      }
    }

    double inertia = 0.0;
    for (int i = 0; i < n; ++i) inertia += (U.row(i) - centers.row(labels[i])).squaredNorm();
    if (inertia < best_inertia - 1e-15) {
      best_inertia = inertia;
      best_labels = labels;
    }
  }
  return best_labels;
}

}  // namespace

std::vector<rvec> residual_matrix(const std::vector<IFCurve>& curves) {
  const size_t n = curves.size();
  if (n == 0) throw std::invalid_argument("residual_matrix: no curves");
  const size_t L = curves.front().values.size();
  rvec sup(n);
  for (size_t k = 0; k < n; ++k) {
    if (curves[k].values.size() != L)
      throw std::invalid_argument("residual_matrix: curve length mismatch");
    sup[k] = sup_norm(curves[k].values);
    if (sup[k] <= 0.0) throw std::invalid_argument("residual_matrix: zero curve");
  }

  std::vector<rvec> R(n, rvec(n, 0.0));
  rvec ratio(L);
  std::vector<uint8_t> use(L);
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      size_t count = 0;
      for (size_t l = 0; l < L; ++l) {
        const bool genuine = !curves[k].gap[l] && !curves[j].gap[l];
        use[l] = genuine && std::abs(curves[j].values[l]) > 1e-12 * sup[j];
        if (use[l]) ++count;
      }
      if (count < 8) {  // too few genuine columns: fall back to the filled curves
        count = 0;
        for (size_t l = 0; l < L; ++l) {
          use[l] = std::abs(curves[j].values[l]) > 1e-12 * sup[j];
          if (use[l]) ++count;
        }
      }
      if (count == 0) throw std::runtime_error("residual_matrix: no usable columns");
      const double scale = sup[j] / sup[k];
      for (size_t l = 0; l < L; ++l)
        ratio[l] = use[l] ? curves[k].values[l] / curves[j].values[l] * scale : 0.0;
      R[k][j] = affine_residual(ratio, use, count);
    }
  }
  return R;
}

ClassifyResult classify(const std::vector<IFCurve>& curves, uint64_t seed,
                        double sigma_override) {
  const size_t n = curves.size();
  if (n == 0) throw std::invalid_argument("classify: no curves");
  ClassifyResult res;
  if (n == 1) {
    res.K = 1;
    res.labels = {0};
    res.residual = {{0.0}};
    res.eigenvalues = {0.0};
    return res;
  }

  res.residual = residual_matrix(curves);
  if (sigma_override > 0.0) {
    res.sigma = sigma_override;
  } else {
    rvec offdiag;
    offdiag.reserve(n * (n - 1));
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j)
        if (j != k) offdiag.push_back(res.residual[k][j]);
    res.sigma = std::max(median(offdiag), 1e-12);
  }

  const double inv2s2 = 1.0 / (2.0 * res.sigma * res.sigma);
  Eigen::MatrixXd A(n, n);
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = 0; j < n; ++j) {
      const double gkj = std::exp(-res.residual[k][j] * res.residual[k][j] * inv2s2);
      const double gjk = std::exp(-res.residual[j][k] * res.residual[j][k] * inv2s2);
      A(k, j) = gkj + gjk;  // diagonal gets the self-loop value 2
    }
  }

  Eigen::VectorXd dinv = A.rowwise().sum().array().inverse().sqrt();
  Eigen::MatrixXd Lsym =
      Eigen::MatrixXd::Identity(n, n) - dinv.asDiagonal() * A * dinv.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Lsym);
  if (eig.info() != Eigen::Success) throw std::runtime_error("classify: eigensolver failed");
  const Eigen::VectorXd asc = eig.eigenvalues();  // ascending

  res.eigenvalues.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) res.eigenvalues[i] = asc[static_cast<int>(n - 1 - i)];
  size_t arg = 0;
  double gmax = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < n; ++i) {
    const double gap = res.eigenvalues[i] - res.eigenvalues[i + 1];
    if (gap > gmax) {
      gmax = gap;
      arg = i + 1;  // 1-indexed gap position
    }
  }
  res.K = static_cast<int>(n - arg);

  if (res.K <= 1) {
    res.K = 1;
    res.labels.assign(n, 0);
    return res;
  }
  if (res.K >= static_cast<int>(n)) {
    res.K = static_cast<int>(n);
    res.labels.resize(n);
    for (size_t i = 0; i < n; ++i) res.labels[i] = static_cast<int>(i);
    return res;
  }

  // Ng-Jordan-Weiss embedding: eigenvectors of the K smallest eigenvalues,
  // rows normalized to the unit sphere.
  Eigen::MatrixXd U = eig.eigenvectors().leftCols(res.K);
  for (int i = 0; i < U.rows(); ++i) {
    const double norm = U.row(i).norm();
    if (norm > 0.0) U.row(i) /= norm;
  }
  std::vector<int> raw = kmeans(U, res.K, seed);

  // Canonicalize labels by order of first occurrence.
  std::vector<int> remap(res.K, -1);
  int next = 0;
  res.labels.assign(n, -1);
  for (size_t i = 0; i < n; ++i) {
    if (remap[raw[i]] < 0) remap[raw[i]] = next++;
    res.labels[i] = remap[raw[i]];
  }
  return res;
}

FundamentalResult fundamental(const std::vector<IFCurve>& class_curves, int cap) {
  const size_t n = class_curves.size();
  if (n == 0) throw std::invalid_argument("fundamental: empty class");
  FundamentalResult out;

  size_t ref = 0;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    const double m = sup_norm(class_curves[i].values);
    if (m < best) {
      best = m;
      ref = i;
    }
  }
  out.ref = ref;
  const rvec& psi1 = class_curves[ref].values;
  const size_t L = psi1.size();

  if (n == 1) {
    out.curve = psi1;
    out.n0 = 1;
    out.low_confidence = true;
    return out;
  }

  // Only columns genuinely observed on both curves enter the integer fit;
  // linear gap fill is not a harmonic ratio and would swamp the objective
  // for fragmented ridges (same policy and fallback as residual_matrix).
  std::vector<std::vector<uint8_t>> use(n);
  std::vector<double> used(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    if (i == ref) continue;
    use[i].assign(L, 0);
    size_t count = 0;
    for (size_t l = 0; l < L; ++l) {
      use[i][l] = !class_curves[ref].gap[l] && !class_curves[i].gap[l];
      if (use[i][l]) ++count;
    }
    if (count < 8) {
      use[i].assign(L, 1);
      count = L;
    }
    used[i] = static_cast<double>(count);
  }

  out.objective.assign(static_cast<size_t>(cap), 0.0);
  for (int nn = 1; nn <= cap; ++nn) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (i == ref) continue;
      double col = 0.0;
      for (size_t l = 0; l < L; ++l) {
        if (!use[i][l]) continue;
        const double x = static_cast<double>(nn) * class_curves[i].values[l] / psi1[l];
        const double r = x - std::floor(x + 0.5);
        col += r * r;
      }
      acc += col / used[i];
    }
    out.objective[static_cast<size_t>(nn - 1)] = acc / static_cast<double>(n - 1);
  }

  double fmin = *std::min_element(out.objective.begin(), out.objective.end());
  int n0 = cap;
  for (int nn = 1; nn <= cap; ++nn) {
    if (out.objective[static_cast<size_t>(nn - 1)] <= fmin + 1e-9) {
      n0 = nn;
      break;
    }
  }
  out.n0 = n0;
  out.curve.assign(L, 0.0);
  for (size_t l = 0; l < L; ++l) out.curve[l] = psi1[l] / static_cast<double>(n0);
  return out;
}

}  // namespace gmd
