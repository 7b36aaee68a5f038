#pragma once

#include <utility>
#include <vector>

#include "magspec/eigensolve.hpp"

namespace magspec {

/// Fluctuation function psi(a) = a - [a] - 1/2.
double fluctuation(double a);

/// Empirical first Riesz mean sum (z - lambda_j)_+ over the computed
/// spectrum; the flag marks z <= lambda_max where truncation is exact.
std::pair<double, bool> R1_empirical(const Spectrum& spectrum, double z);

/// Semiclassical lower bound
/// |Omega|/(8 pi) z^2 - |Omega| beta^2/(2 pi) psi^2(z/(2 beta) + 1/2).
double R1_lower(double z, double beta, double area);

/// Oscillating remainder R(X) = beta/X (X - [X])([X] - X + 1), with
/// R(X) = beta (1 - X) on [0, 1] and R(X) in [0, beta/(4X)].
double remainder_R(double X, double beta);

/// Average bound: (1/k) sum lambda_j <= 2 pi k / |Omega| + R(2 pi k / (beta |Omega|)).
double avg_upper(int k, double beta, double area);

/// Single eigenvalue bound lambda_{k+1} <= 8 pi k / |Omega| + beta.
double single_upper(int k, double beta, double area);

/// Heat trace lower bound beta |Omega| / (4 pi sinh(beta t)).
double heat_lower(double t, double beta, double area);

/// Verification of the semiclassical estimates against a computed spectrum.
struct RieszReport {
  std::vector<double> z_grid;
  std::vector<double> r1_empirical;
  std::vector<double> r1_lower;
  std::vector<double> margins;       // empirical - lower
  std::vector<bool> valid;           // truncation-exact flag per z
  bool riesz_ok = true;              // R1 >= lower on all valid z
  bool averages_ok = true;           // averages within avg_upper for k <= k_max
  bool singles_ok = true;            // lambda_{k+1} <= single_upper
  std::vector<std::pair<double, double>> heat_samples;  // (t, truncated trace - bound)
};

/// Runs every check on the z-grid made of eigenvalues and their midpoints.
/// Heat-trace rows are report-only (truncated sums understate the trace).
RieszReport verify_spectrum(const Spectrum& spectrum, double beta, double area,
                            int k_max);

}  // namespace magspec
