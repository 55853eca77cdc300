#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gmd/classify.hpp"
#include "gmd/core.hpp"
#include "gmd/ridges.hpp"

using namespace gmd;

namespace {

// Builds an IF curve directly (no transform round-trip): values[l] = fn(t_l).
IFCurve curve_of(const std::function<double(double)>& fn, size_t L, double dither = 0.0,
                 uint64_t seed = 0) {
  IFCurve c;
  c.values.resize(L);
  c.weights.assign(L, 1.0);
  c.gap.assign(L, 0);
  std::mt19937_64 rng(seed);
  for (size_t l = 0; l < L; ++l) {
    const double t = static_cast<double>(l) / static_cast<double>(L);
    double d = dither > 0.0 ? (rand_u01(rng) - 0.5) * dither : 0.0;
    c.values[l] = fn(t) + d;
  }
  c.energy = 1.0;
  return c;
}

double g1(double t) { return 60.0 * (1.0 + 0.01 * two_pi * std::cos(two_pi * t)); }
double g2(double t) { return 90.0 * (1.0 - 0.01 * two_pi * std::sin(two_pi * t)); }

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("harmonics of one fundamental have near-zero pairwise residuals") {
    const size_t L = 512;
    std::vector<IFCurve> cs = {curve_of(g1, L), curve_of([](double t) { return 2.0 * g1(t); }, L),
                               curve_of([](double t) { return 3.0 * g1(t); }, L)};
    const auto R = residual_matrix(cs);
    for (size_t k = 0; k < 3; ++k)
      for (size_t j = 0; j < 3; ++j) {
        if (k == j)
          CHECK(R[k][j] == 0.0);
        else
          CHECK(R[k][j] < 1e-12);
      }
  }

  TEST_CASE("cross-mode residuals dwarf intra-mode residuals") {
    const size_t L = 512;
    std::vector<IFCurve> cs = {curve_of(g1, L, 0.3, 1),
                               curve_of([](double t) { return 2.0 * g1(t); }, L, 0.3, 2),
                               curve_of(g2, L, 0.3, 3),
                               curve_of([](double t) { return 2.0 * g2(t); }, L, 0.3, 4)};
    const auto R = residual_matrix(cs);
    const double intra = std::max(std::max(R[0][1], R[1][0]), std::max(R[2][3], R[3][2]));
    double cross = 1e300;
    for (size_t k = 0; k < 2; ++k)
      for (size_t j = 2; j < 4; ++j) cross = std::min(cross, std::min(R[k][j], R[j][k]));
    CHECK(cross > 10.0 * intra);
  }

  TEST_CASE("gap columns are excluded from the ratio fit") {
    const size_t L = 512;
    IFCurve a = curve_of(g1, L);
    IFCurve b = curve_of([](double t) { return 2.0 * g1(t); }, L);
    // Corrupt a stretch of one curve but mark it as gap-filled; the fit must
    // ignore it entirely.
    for (size_t l = 100; l < 160; ++l) {
      b.values[l] = 500.0;
      b.gap[l] = 1;
    }
    const auto R = residual_matrix({a, b});
    CHECK(R[0][1] < 1e-12);
    CHECK(R[1][0] < 1e-12);
  }

  TEST_CASE("one mode's harmonic family clusters into a single class") {
    const size_t L = 512;
    std::vector<IFCurve> cs;
    for (int n : {1, 2, 3})
      cs.push_back(curve_of([n](double t) { return n * g1(t); }, L, 0.2, 10 + n));
    const ClassifyResult r = classify(cs);
    CHECK(r.K == 1);
    for (int lab : r.labels) CHECK(lab == 0);
  }

  TEST_CASE("two harmonic families separate into two classes") {
    // Family sizes 5 + 2: enough intra pairs that the median bandwidth lands
    // on the intra-family residual scale, which is the regime the pipeline
    // produces (one family always dominates the support count).
    const size_t L = 512;
    std::vector<IFCurve> cs;
    for (int n : {1, 2, 3, 4, 5})
      cs.push_back(curve_of([n](double t) { return n * g1(t); }, L, 0.2, 20 + n));
    for (int n : {1, 2})
      cs.push_back(curve_of([n](double t) { return n * g2(t); }, L, 0.2, 30 + n));
    const ClassifyResult r = classify(cs);
    REQUIRE(r.K == 2);
    CHECK(r.labels == std::vector<int>{0, 0, 0, 0, 0, 1, 1});
    CHECK(r.eigenvalues.size() == 7);
    for (size_t i = 1; i < 7; ++i) CHECK(r.eigenvalues[i - 1] >= r.eigenvalues[i] - 1e-12);
  }

  TEST_CASE("a lone unrelated curve becomes its own class (self-loop keeps it alive)") {
    const size_t L = 512;
    std::vector<IFCurve> cs;
    cs.push_back(curve_of([](double t) { return 47.0 + 13.0 * std::sin(two_pi * t); }, L, 0.2, 40));
    for (int n : {1, 2, 3, 4})
      cs.push_back(curve_of([n](double t) { return n * g2(t); }, L, 0.2, 50 + n));
    const ClassifyResult r = classify(cs);
    REQUIRE(r.K == 2);
    CHECK(r.labels == std::vector<int>{0, 1, 1, 1, 1});
  }

  TEST_CASE("classification is invariant under global curve rescaling") {
    const size_t L = 256;
    std::vector<IFCurve> cs;
    for (int n : {1, 2}) cs.push_back(curve_of([n](double t) { return n * g1(t); }, L, 0.2, 60 + n));
    for (int n : {1, 3}) cs.push_back(curve_of([n](double t) { return n * g2(t); }, L, 0.2, 70 + n));
    std::vector<IFCurve> scaled = cs;
    for (auto& c : scaled)
      for (auto& v : c.values) v *= 7.5;
    const ClassifyResult a = classify(cs);
    const ClassifyResult b = classify(scaled);
    CHECK(a.K == b.K);
    CHECK(a.labels == b.labels);
    // The residuals themselves are ratio-based, hence exactly scale-free.
    const auto Ra = residual_matrix(cs);
    const auto Rb = residual_matrix(scaled);
    for (size_t k = 0; k < Ra.size(); ++k)
      for (size_t j = 0; j < Ra.size(); ++j)
        CHECK(Ra[k][j] == doctest::Approx(Rb[k][j]).epsilon(1e-9));
  }

  TEST_CASE("labels are equivariant under input permutation") {
    const size_t L = 256;
    std::vector<IFCurve> cs;
    for (int n : {1, 2, 3, 4, 5})
      cs.push_back(curve_of([n](double t) { return n * g1(t); }, L, 0.2, 80 + n));
    for (int n : {1, 2})
      cs.push_back(curve_of([n](double t) { return n * g2(t); }, L, 0.2, 90 + n));
    const std::vector<size_t> perm = {5, 0, 6, 1, 2, 3, 4};
    std::vector<IFCurve> shuffled;
    for (size_t i : perm) shuffled.push_back(cs[i]);
    const ClassifyResult a = classify(cs);
    const ClassifyResult b = classify(shuffled);
    REQUIRE(a.K == 2);
    REQUIRE(b.K == 2);
    // Same partition: curves i and j share a label iff their images do.
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = 0; j < perm.size(); ++j)
        CHECK((a.labels[perm[i]] == a.labels[perm[j]]) == (b.labels[i] == b.labels[j]));
    // Canonicalization: first curve's label is always 0.
    CHECK(b.labels[0] == 0);
  }

  TEST_CASE("single curve short-circuits") {
    const ClassifyResult r = classify({curve_of(g1, 128)});
    CHECK(r.K == 1);
    CHECK(r.labels == std::vector<int>{0});
  }

  TEST_CASE("trend-plus-seasonal style family still clusters by fundamental") {
    // Annual + semiannual + an unrelated slow wobble: the wobble must split off.
    const size_t L = 512;
    auto year = [](double t) { return 365.0 * (1.0 + 0.002 * std::sin(two_pi * t)); };
    std::vector<IFCurve> cs = {
        curve_of(year, L, 0.4, 100),
        curve_of([&](double t) { return 2.0 * year(t); }, L, 0.4, 101),
        curve_of([&](double t) { return 4.0 * year(t); }, L, 0.4, 102),
        curve_of([](double t) { return 11.0 + 3.0 * std::cos(two_pi * t); }, L, 0.05, 103)};
    const ClassifyResult r = classify(cs);
    REQUIRE(r.K == 2);
    CHECK(r.labels == std::vector<int>{0, 0, 0, 1});
  }

  TEST_CASE("fundamental: divisor n0 recovers the generator from upper harmonics") {
    const size_t L = 512;
    // Curves at 2g and 3g only: psi_1 = 2g, and n=2 makes both ratios integers.
    std::vector<IFCurve> cs = {curve_of([](double t) { return 2.0 * g1(t); }, L),
                               curve_of([](double t) { return 3.0 * g1(t); }, L)};
    const FundamentalResult r = fundamental(cs);
    CHECK(r.n0 == 2);
    CHECK_FALSE(r.low_confidence);
    for (size_t l = 0; l < L; ++l) {
      const double t = static_cast<double>(l) / static_cast<double>(L);
      CHECK(r.curve[l] == doctest::Approx(g1(t)).epsilon(1e-12));
    }
  }

  TEST_CASE("fundamental: full family needs no divisor") {
    const size_t L = 256;
    std::vector<IFCurve> cs;
    for (int n : {1, 2, 3}) cs.push_back(curve_of([n](double t) { return n * g1(t); }, L));
    const FundamentalResult r = fundamental(cs);
    CHECK(r.n0 == 1);
    CHECK(r.ref == 0);
    CHECK_FALSE(r.low_confidence);
  }

  TEST_CASE("fundamental: single curve is low confidence") {
    const FundamentalResult r = fundamental({curve_of(g1, 128)});
    CHECK(r.n0 == 1);
    CHECK(r.low_confidence);
    CHECK(r.curve.size() == 128);
  }
}
