#include <algorithm>
#include <cmath>

#include "magspec/bounds.hpp"

namespace magspec {

namespace {

double theta0_cached() {
  static const double value = theta0(1e-6).theta0;
  return value;
}

Bound make(Bound::Side side, double value, bool strict, const char* tag) {
  Bound b;
  b.side = side;
  b.value = value;
  b.strict = strict;
  b.provenance = tag;
  return b;
}

}  // namespace

double BoundConstants::gamma() const {
  // first Dirichlet eigenvalue of the unit disk, j_{0,1}^2
  return 5.783185962946785;
}

BoundConstants BoundConstants::defaults() {
  BoundConstants c;
  c.Lambda = theta0_cached();
  return c;
}

void BoundConstants::validate() const {
  if (!(C1 > 0) || !(M > 0) || !(Lambda > 0))
    throw ValidationError("constants: C1, M, Lambda must be > 0");
  if (Lambda > theta0_cached() * (1 + 1e-9))
    throw ValidationError("constants: Lambda must not exceed Theta0");
}

Bound ub_circumradius(double R_omega, double beta) {
  if (!(R_omega > 0) || !(beta > 0))
    throw ValidationError("ub_circumradius: requires R_Omega > 0 and beta > 0");
  double value = R_omega > 1 / std::sqrt(beta)
                     ? beta - 1 / (2 * R_omega * R_omega)
                     : R_omega * R_omega * beta * beta / 2;
  return make(Bound::Side::upper, value, false, "circumradius");
}

Bound ub_universal(double beta) {
  Bound b = make(Bound::Side::upper, beta, beta > 0, "field-strength-strict");
  if (beta == 0)
    b.messages.push_back("beta = 0: lambda_1 = 0 is attained, bound not strict");
  return b;
}

Bound ub_theta0_class(const DomainSpec& spec, double beta) {
  double th = theta0_cached();
  Bound b = make(Bound::Side::upper, th * beta, true, "theta0-class");
  if (!(beta > 0)) throw ValidationError("ub_theta0_class: beta must be > 0");

  bool subgraph = false;
  if (spec.flags.is_subgraph)
    subgraph = *spec.flags.is_subgraph;
  else
    subgraph = spec.kind == DomainKind::rectangle;

  bool strip_ok = false;
  double needed = 2 * std::sqrt(th / beta);
  if (spec.kind == DomainKind::rectangle) {
    // orient the long side vertically
    strip_ok = std::max(spec.w, spec.h) >= needed;
  } else if (spec.flags.strip) {
    // caller-asserted strip; verify the rectangle containment by sampling
    const auto& s = *spec.flags.strip;
    if (s.height >= needed) {
      strip_ok = true;
      const int ns = 48;  // interior sampling of the asserted rectangle
      for (int i = 1; i < ns && strip_ok; ++i) {
        for (int j = 1; j < ns && strip_ok; ++j) {
          Vec2 p(s.x_lo + (s.x_hi - s.x_lo) * i / ns, s.height * j / ns);
          if (!contains(spec, p)) strip_ok = false;
        }
      }
    }
  }

  if (!subgraph && !strip_ok) {
    b.hypotheses_ok = false;
    b.messages.push_back(
        "neither the sub-graph nor the verified strip condition holds");
  }
  return b;
}

Bound ub_selftiling(double Lambda, double beta) {
  if (Lambda > theta0_cached() * (1 + 1e-9))
    throw ValidationError("ub_selftiling: Lambda must not exceed Theta0");
  return make(Bound::Side::upper, Lambda * beta, false, "self-tiling");
}

Bound ub_width(double eps, double beta) {
  if (eps < 0) throw ValidationError("ub_width: width must be >= 0");
  return make(Bound::Side::upper, eps * eps * beta * beta / 4, false,
              "width");
}

Bound ub_simply_connected_area(double area, double beta, bool simply_connected) {
  Bound b = make(Bound::Side::upper, beta * (1 - std::exp(-beta * area / (2 * kPi))),
                 false, "area-exponential");
  if (!simply_connected) {
    b.hypotheses_ok = false;
    b.messages.push_back("domain is not simply connected");
  }
  return b;
}

Bound ub_fh2(double area, double beta, bool simply_connected) {
  Bound b = make(Bound::Side::upper, beta * beta * area / (8 * kPi), false,
                 "area-linear");
  if (!simply_connected) {
    b.hypotheses_ok = false;
    b.messages.push_back("domain is not simply connected");
  }
  return b;
}

Bound ub_variable_sup(double beta_star) {
  return make(Bound::Side::upper, beta_star, true, "variable-sup");
}

Bound ub_variable(double beta_star, double phi_star) {
  return make(Bound::Side::upper, beta_star * (1 - std::exp(-2 * phi_star)),
              false, "variable-phi-max");
}

Bound ub_variable_integral(const TriangleMesh& mesh,
                           const std::function<double(const Vec2&)>& beta_field,
                           const TorsionField& phi) {
  // midpoint quadrature of int beta (e^{2 phi} - 1) / int e^{2 phi}
  double num = 0, den = 0;
  bool nonneg = true;
  for (const auto& tri : mesh.triangles) {
    const Vec2& p0 = mesh.nodes[tri[0]];
    const Vec2& p1 = mesh.nodes[tri[1]];
    const Vec2& p2 = mesh.nodes[tri[2]];
    double area = 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                         (p2.x() - p0.x()) * (p1.y() - p0.y()));
    const Vec2 mid[3] = {0.5 * (p0 + p1), 0.5 * (p1 + p2), 0.5 * (p2 + p0)};
    static const double phim[3][3] = {
        {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
    for (int q = 0; q < 3; ++q) {
      double ph = 0;
      for (int i = 0; i < 3; ++i) ph += phim[q][i] * phi.values[tri[i]];
      double bq = beta_field(mid[q]);
      if (bq < 0) nonneg = false;
      num += area / 3 * bq * (std::exp(2 * ph) - 1);
      den += area / 3 * std::exp(2 * ph);
    }
  }
  Bound b = make(Bound::Side::upper, num / den, false, "variable-integral");
  if (!nonneg)
    b.messages.push_back("field changes sign; quotient form still applies");
  return b;
}

Bound lb_kovarik(double area, double rho, double lambda2N, double beta,
                 bool simply_connected) {
  if (!(area > 0) || !(rho > 0) || !(lambda2N > 0) || !(beta > 0))
    throw ValidationError("lb_kovarik: all inputs must be > 0");
  double ko1 = kPi / (4 * area) * beta * beta * std::pow(rho, 4) * lambda2N /
               (beta * beta * rho * rho + 6 * lambda2N);
  double ko2 = kPi / (4 * area) * beta * rho * rho * lambda2N /
               (beta + 24 * lambda2N);
  double inv = 1 / (rho * rho);
  double value = beta < inv ? ko1 : (beta > inv ? ko2 : std::max(ko1, ko2));
  Bound b = make(Bound::Side::lower, value, false, "inradius-lambda2N");
  if (!simply_connected) {
    b.hypotheses_ok = false;
    b.messages.push_back("domain is not simply connected");
  }
  return b;
}

Bound lb_chenli(double R, double R0, const BoundConstants& constants) {
  if (!(R > 0) || !(R0 >= R))
    throw ValidationError("lb_chenli: requires 0 < R <= R0");
  Bound b = make(Bound::Side::lower, constants.C1 * R * R / std::pow(R0, 4),
                 false, "neumann-star-shaped");
  b.conditional = !constants.C1_known;
  if (b.conditional)
    b.messages.push_back("uses the unknown universal constant C1 (placeholder)");
  return b;
}

Bound lb_star(double R, double R0, double rho, double beta,
              const BoundConstants& constants) {
  if (!(R > 0) || !(rho >= R) || !(R0 >= rho))
    throw ValidationError("lb_star: requires 0 < R <= rho <= R0");
  double c = constants.c();
  double small_beta = c * beta * beta * std::pow(R, 8) / std::pow(R0, 6);
  double large_beta =
      c * std::pow(R, 6) * beta / (std::pow(R0, 6) * (R * R * beta + 1));
  double inv = 1 / (rho * rho);
  double value = beta < inv ? small_beta
                            : (beta > inv ? large_beta
                                          : std::max(small_beta, large_beta));
  Bound b = make(Bound::Side::lower, value, false, "star-shaped");
  b.conditional = !constants.C1_known;
  if (b.conditional)
    b.messages.push_back("constant c = C1/(96 gamma) uses the C1 placeholder");
  return b;
}

Bound lb_rolling(double delta, double beta, const BoundConstants& constants) {
  if (delta < 0) throw ValidationError("lb_rolling: delta must be >= 0");
  double C = constants.C();
  double value = delta == 0
                     ? 0.0
                     : (beta * delta * delta <= 1 ? C * beta * beta * delta * delta
                                                  : C * beta);
  Bound b = make(Bound::Side::lower, value, false, "rolling-radius");
  b.conditional = !constants.C1_known;
  b.messages.push_back("covering multiplicity M = " + std::to_string(constants.M));
  if (delta == 0)
    b.messages.push_back("delta = 0 (non-smooth domain): trivial bound");
  return b;
}

Bound lb_covering(std::span<const double> piece_lambda1, int K) {
  if (piece_lambda1.empty())
    throw ValidationError("lb_covering: needs at least one piece");
  if (K < 1) throw ValidationError("lb_covering: K must be >= 1");
  double mn = *std::min_element(piece_lambda1.begin(), piece_lambda1.end());
  return make(Bound::Side::lower, mn / K, false, "covering");
}

Bound curve_ub_quarter(double beta) {
  return make(Bound::Side::upper, beta / 4, false, "curve-quarter");
}

Bound tube_lb(double curve_lambda1, double beta, double h, bool flux_is_integer) {
  Bound b = make(Bound::Side::lower,
                 std::max(0.0, curve_lambda1 - std::sqrt(beta) * h), false,
                 "tube-curve");
  if (flux_is_integer) {
    b.hypotheses_ok = false;
    b.messages.push_back("flux beta |Omega| / 2 pi is an integer");
  }
  b.messages.push_back(
      "valid for h below an eps_0 depending on the domain (not computable)");
  return b;
}

EpsNet eps_net(const DomainSpec& spec, double eps, int grid) {
  GeometricSummary s = summarize(spec);
  if (!(eps > 0)) throw ValidationError("eps_net: eps must be > 0");
  if (eps >= s.inradius)
    throw ValidationError("eps_net: eps >= inradius leaves no interior points");
  // bounding box
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  auto grow = [&](const Vec2& p) {
    x0 = std::min(x0, p.x());
    x1 = std::max(x1, p.x());
    y0 = std::min(y0, p.y());
    y1 = std::max(y1, p.y());
  };
  switch (spec.kind) {
    case DomainKind::disk: grow({-spec.R, -spec.R}); grow({spec.R, spec.R}); break;
    case DomainKind::rectangle: grow({0, 0}); grow({spec.w, spec.h}); break;
    case DomainKind::annulus:
      grow({-spec.r_out, -spec.r_out});
      grow({spec.r_out, spec.r_out});
      break;
    case DomainKind::ellipse: grow({-spec.a, -spec.b}); grow({spec.a, spec.b}); break;
    case DomainKind::polygon:
      for (const Vec2& v : spec.vertices) grow(v);
      break;
    case DomainKind::tube: {
      double r = s.circumradius;
      grow({-r, -r});
      grow({r, r});
      break;
    }
  }
  EpsNet net;
  // greedy maximal eps-separated set over the grid, row-major order
  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      Vec2 p(x0 + (x1 - x0) * (ix + 0.5) / grid, y0 + (y1 - y0) * (iy + 0.5) / grid);
      if (!contains(spec, p)) continue;
      if (boundary_distance(spec, p) < eps) continue;
      bool ok = true;
      for (const Vec2& q : net.points) {
        if ((p - q).norm() < eps) {
          ok = false;
          break;
        }
      }
      if (ok) net.points.push_back(p);
    }
  }
  if (net.points.empty())
    throw ValidationError("eps_net: no interior points at this eps");
  // measured covering multiplicity of the disks B(p_i, 2 eps)
  int K = 1;
  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      Vec2 p(x0 + (x1 - x0) * (ix + 0.5) / grid, y0 + (y1 - y0) * (iy + 0.5) / grid);
      if (!contains(spec, p)) continue;
      int c = 0;
      for (const Vec2& q : net.points)
        if ((p - q).norm() < 2 * eps) ++c;
      K = std::max(K, c);
    }
  }
  net.K_measured = K;
  return net;
}

std::pair<double, double> scale_map(double lambda, double alpha, double beta) {
  if (!(alpha > 0)) throw ValidationError("scale_map: alpha must be > 0");
  return {lambda / (alpha * alpha), alpha * alpha * beta};
}

Verdict check(const Bound& bound, const Spectrum& spectrum) {
  if (spectrum.eigenvalues.empty())
    throw ValidationError("check: empty spectrum");
  double lam1 = spectrum.eigenvalues.front();
  double resid = spectrum.residuals.empty() ? 0.0 : spectrum.residuals.front();
  if (bound.conditional) {
    double margin = bound.side == Bound::Side::upper ? bound.value - lam1
                                                     : lam1 - bound.value;
    return {Verdict::Status::conditional, margin};
  }
  if (bound.side == Bound::Side::upper) {
    double margin = bound.value - lam1;
    bool ok = bound.strict ? margin > 10 * resid : margin >= -resid;
    return {ok ? Verdict::Status::pass : Verdict::Status::fail, margin};
  }
  double margin = lam1 - bound.value;
  bool ok = margin >= -resid;
  return {ok ? Verdict::Status::pass : Verdict::Status::fail, margin};
}

}  // namespace magspec
