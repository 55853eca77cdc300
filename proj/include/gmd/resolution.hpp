#pragma once

#include <cstddef>

namespace gmd {

// Analytic separability diagnostics for a tone level N under packet
// parameters (s, d).
struct ResolutionReport {
  double N = 0.0;
  double s = 0.0;
  double d = 0.0;
  double a_star = 0.0;         // root of N - a = d * a^s
  double lambda0 = 0.0;        // single-scale critical ratio (2a - N) / N
  long n0 = 0;                 // multiscale separable-term count
  double multiscale_gap = 0.0; // 1/((n0-1)N) - 1/(n0 N), 0 when n0 < 2
};

// Solves N - a = d * a^s on (0, N) by bisection and returns (2a - N)/N.
// Throws when the ratio is not positive (d too large for this N) or on a
// parameter outside N >= 1, d in (0,1], s in (1/2, 1]. s = 1 is admitted
// here (wavelet baseline), unlike in the transform ladder.
double single_scale(double N, double d, double s);

// Multiscale count floor(N^(1/s - 1) / (2d)^(1/s)), evaluated with an epsilon
// guard so exact-integer hits do not round down.
long multiscale(double N, double d, double s);

ResolutionReport resolution_report(double N, double d, double s);

}  // namespace gmd
