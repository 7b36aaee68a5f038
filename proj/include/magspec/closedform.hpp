#pragma once

#include <vector>

#include "magspec/eigensolve.hpp"
#include "magspec/par.hpp"

namespace magspec {

/// One eigenvalue on the disk branch with angular index n and radial index j.
struct DiskBranchPoint {
  int n;            // angular index, may be negative
  int j;            // radial index, 1-based
  double lambda;
  double R;
  double beta;
  double residual;  // |F| at the polished root, in the normalized scale
};

/// Result of the de Gennes constant minimization.
struct DeGennesResult {
  double theta0;
  double xi0;        // negative minimizer
  double truncation; // half-line truncation length T
  int grid;          // base grid size N
  double tol;
};

/// Spectrum of the magnetic Laplacian restricted to a closed curve of
/// length L enclosing area S: the two-sided family
/// 4 pi^2 / L^2 (n - beta S / (2 pi))^2, n in Z, sorted with multiplicity.
Spectrum circle_spectrum(double L, double S, double beta, int count);

/// First value of the curve family; always <= beta/4.
double curve_lambda1(double L, double S, double beta);

/// Sign-accurate branch function proportional to v_n'(R), the radial
/// derivative of the generalized Laguerre eigenfunction. Kummer series with
/// term-ratio stopping, radial ODE integration fallback for large arguments.
double branch_function(int n, double beta, double R, double lambda);

/// All branch eigenvalues in (0, lambda_max]: bracketed on a lambda grid of
/// step beta/20, polished by bisection, sign-consistency audited (the grid
/// is halved and rescanned until the root count stabilizes).
std::vector<DiskBranchPoint> disk_branch_eigens(int n, double beta, double R,
                                                double lambda_max);

/// k smallest disk eigenvalues merged over branches n in Z. The n-scan stops
/// once three consecutive branch minima exceed the current k-th candidate.
Spectrum disk_spectrum(double R, double beta, int k,
                       ExecMode mode = default_mode());
std::vector<DiskBranchPoint> disk_spectrum_points(double R, double beta, int k,
                                                  ExecMode mode = default_mode());

/// Landau level beta(2l+1) of the whole-plane operator.
double landau_level(int l, double beta);

/// Squared L2 norm of the (n,l) Landau eigenfunction:
/// pi (2/beta)^(n+1) (l+n)!/l!
double landau_norm_sq(int n, int l, double beta);

/// Partial sum over n of |v_{n,l}|^2 at beta r^2/2 = y, in units of
/// beta/(2 pi). Converges to 1 + e^{-y} P_l(y) with deg P_l = 2l-1.
double landau_sum_partial(int l, double y, int N);

/// Rayleigh ratio G(m,n) of the disk test functions, via exact finite-sum
/// incomplete gamma values. G(n,n) = 1 and G(m,n) < 1 for m < n.
double rayleigh_ratio_G(int m, int n);

/// First eigenvalue of -f'' + (xi+t)^2 f = mu f on (0,T), f'(0)=0, f(T)=0,
/// second-order finite differences Richardson-extrapolated over N and 2N.
double mu1(double xi, double T, int N);

/// de Gennes constant Theta0 = min_xi mu1(xi), golden-section search over
/// [-3, 0]. Asserts the identity |Theta0 - xi0^2| <= 10 tol.
DeGennesResult theta0(double tol);

}  // namespace magspec
