#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "magspec/closedform.hpp"
#include "magspec/fem.hpp"
#include "magspec/geometry.hpp"

namespace magspec {

/// One-sided certified value with hypothesis flags and provenance.
struct Bound {
  enum class Side { upper, lower };
  Side side;
  double value = 0;
  bool strict = false;
  bool hypotheses_ok = true;
  bool conditional = false;  // depends on unknown universal constants
  std::vector<std::string> messages;
  std::string provenance;  // theorem tag
};

/// Universal constants entering the conditional lower bounds. They are only
/// known to exist; defaults are conservative documented placeholders.
struct BoundConstants {
  double C1 = 1.0;        // Chen-Li constant, default placeholder
  bool C1_known = false;
  double M = 25.0;        // covering multiplicity; replace with a measured K
  double Lambda;          // self-tiling limit constant, must be <= Theta0

  double gamma() const;   // first Dirichlet eigenvalue of the unit disk
  double c() const { return C1 / (96.0 * gamma()); }      // star-shaped chain
  double c1() const { return c() / 16384.0; }             // 2^-14 aggregation
  double C() const { return c1() / M; }                   // rolling-radius chain

  static BoundConstants defaults();
  void validate() const;
};

// ---- upper bounds ----------------------------------------------------------

/// beta - 1/(2 R^2) when R > 1/sqrt(beta), else R^2 beta^2 / 2.
Bound ub_circumradius(double R_omega, double beta);
/// lambda_1 < beta, strict for beta > 0.
Bound ub_universal(double beta);
/// Theta0 * beta for sub-graphs (case 1) or verified strip containment
/// (case 2); hypotheses_ok = false otherwise.
Bound ub_theta0_class(const DomainSpec& spec, double beta);
/// Lambda * beta for self-tiling domains, Lambda <= Theta0 required.
Bound ub_selftiling(double Lambda, double beta);
/// eps^2 beta^2 / 4 for domains of width eps.
Bound ub_width(double eps, double beta);
/// beta (1 - exp(-beta area / 2 pi)), simply connected only.
Bound ub_simply_connected_area(double area, double beta, bool simply_connected);
/// beta^2 area / (8 pi), simply connected only.
Bound ub_fh2(double area, double beta, bool simply_connected);
/// Variable-field bounds: sup bound (strict), the phi_star exponential form,
/// and the full integral quotient evaluated on a mesh.
Bound ub_variable_sup(double beta_star);
Bound ub_variable(double beta_star, double phi_star);
Bound ub_variable_integral(const TriangleMesh& mesh,
                           const std::function<double(const Vec2&)>& beta_field,
                           const TorsionField& phi);

// ---- lower bounds ----------------------------------------------------------

/// Inradius/lambda2N lower bound for simply connected domains; regime split
/// at beta = rho^-2, maximum of both formulas at the boundary.
Bound lb_kovarik(double area, double rho, double lambda2N, double beta,
                 bool simply_connected);
/// lambda_2^N >= C1 R^2 / R0^4 for star-shaped domains (conditional).
Bound lb_chenli(double R, double R0, const BoundConstants& constants);
/// Star-shaped magnetic lower bound (conditional); regime split at
/// beta = rho^-2 with the larger value reported at the boundary.
Bound lb_star(double R, double R0, double rho, double beta,
              const BoundConstants& constants);
/// Rolling-radius lower bound C beta^2 delta^2 / C beta (conditional).
Bound lb_rolling(double delta, double beta, const BoundConstants& constants);
/// Covering bound: lambda_1 >= (1/K) min over pieces.
Bound lb_covering(std::span<const double> piece_lambda1, int K);
/// Curve bounds: lambda_1(Gamma) <= beta/4 and the tube lower bound
/// lambda_1(omega_h) >= lambda_1(Gamma) - sqrt(beta) h.
Bound curve_ub_quarter(double beta);
Bound tube_lb(double curve_lambda1, double beta, double h, bool flux_is_integer);

// ---- composition -----------------------------------------------------------

/// Maximal eps-separated interior point set over a sampling grid, with the
/// measured covering multiplicity of the disks B(p_i, 2 eps).
struct EpsNet {
  std::vector<Vec2> points;
  int K_measured = 0;
};
EpsNet eps_net(const DomainSpec& spec, double eps, int grid);

/// Homothety map: (lambda, beta) of Omega to (lambda/alpha^2, alpha^2 beta)
/// of alpha * Omega.
std::pair<double, double> scale_map(double lambda, double alpha, double beta);

/// Verdict of a bound against a computed spectrum.
struct Verdict {
  enum class Status { pass, fail, conditional };
  Status status;
  double margin;  // signed distance from violation, in lambda units
};
Verdict check(const Bound& bound, const Spectrum& spectrum);

}  // namespace magspec
