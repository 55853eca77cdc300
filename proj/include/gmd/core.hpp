#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace gmd {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// L2 norm over [0,1] with a uniform grid: sqrt((1/L)*sum |x_l|^2).
double l2_norm(const cvec& x);
double l2_norm(const rvec& x);

// ||x - ref|| / ||ref||, both on the same uniform grid.
double rel_l2_error(const cvec& x, const cvec& ref);

// Compensated (Kahan) sum; used where conservation checks demand ~1e-15 sums.
double kahan_sum(const rvec& terms);

// Portable uniform double in (0,1] and a standard-normal pair (Box-Muller).
// std::uniform_real_distribution / std::normal_distribution are
// implementation-defined, which would break the bit-reproducibility contract.
double rand_u01(std::mt19937_64& rng);
void rand_normal_pair(std::mt19937_64& rng, double& z0, double& z1);

}  // namespace gmd
