#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magspec/common.hpp"

namespace magspec {

enum class CurveKind { circle, ellipse, polyline };

/// Simple closed counterclockwise curve in the plane.
struct CurveSpec {
  CurveKind kind = CurveKind::circle;
  double R = 0;                // circle
  double a = 0, b = 0;         // ellipse semi-axes
  std::vector<Vec2> points;    // closed polyline (no repeated last vertex)

  void validate() const;
  std::string id() const;
};

/// Total length and enclosed area of a curve. Length for ellipses is
/// computed by adaptive quadrature to 1e-12.
struct CurveInvariants {
  double length;
  double enclosed_area;
};
CurveInvariants curve_invariants(const CurveSpec& curve);

/// Arclength-parametrized view of a CurveSpec, used by meshing and by the
/// tube machinery. Positions, outward normals and curvature at arclength s.
class CurveGeometry {
 public:
  explicit CurveGeometry(const CurveSpec& spec);

  double length() const { return length_; }
  double enclosed_area() const { return area_; }
  double min_curvature_radius() const { return min_curv_radius_; }

  Vec2 position(double s) const;
  Vec2 outward_normal(double s) const;
  double curvature(double s) const;

  /// Arclength of the point on the curve nearest to p.
  double nearest_arclength(const Vec2& p) const;
  /// Unsigned distance from p to the curve.
  double distance(const Vec2& p) const;
  /// True when p lies inside the region enclosed by the curve.
  bool encloses(const Vec2& p) const;

 private:
  CurveSpec spec_;
  double length_ = 0, area_ = 0, min_curv_radius_ = 0;
  // ellipse: cumulative arclength table over parameter t in [0, 2pi]
  std::vector<double> s_table_;
  std::vector<double> t_table_;
  double param_of_arclength(double s) const;
};

enum class DomainKind { disk, rectangle, annulus, ellipse, polygon, tube };

/// Caller-asserted or auto-derived classification flags consumed by the
/// Theta0-class upper bound.
struct ClassFlags {
  std::optional<bool> is_subgraph;
  // strip condition: domain within (x_lo, x_hi) x (0, inf) and containing
  // (x_lo, x_hi) x (0, height)
  struct Strip {
    double x_lo, x_hi, height;
  };
  std::optional<Strip> strip;
  std::optional<double> self_tiling_Lambda;
};

/// Parametric planar domain.
struct DomainSpec {
  DomainKind kind = DomainKind::disk;

  double R = 0;               // disk
  double w = 0, h = 0;        // rectangle (axis-aligned, (0,w) x (0,h))
  double r_in = 0, r_out = 0; // annulus
  double a = 0, b = 0;        // ellipse semi-axes
  std::vector<Vec2> vertices; // polygon, counterclockwise, simple
  CurveSpec curve;            // tube: one-sided inner tube around curve
  double half_width = 0;      // tube

  ClassFlags flags;

  void validate() const;  // throws ValidationError naming the violated invariant
  std::string id() const;
  bool simply_connected() const;
};

/// Exact geometric functionals of a domain. Lengths in domain units.
struct GeometricSummary {
  double area = 0;
  double perimeter = 0;
  double circumradius = 0;      // R_Omega, radius of the smallest enclosing disk
  double inradius = 0;          // rho_Omega
  double width = 0;             // smallest enclosing slab
  double diameter = 0;
  double rolling_radius = 0;    // delta; 0 for polygons (undefined there)
  bool rolling_radius_defined = false;
  bool simply_connected = true;
  double inradius_uncertainty = 0;  // one cell diagonal for the polygon grid method
};

struct SummarizeOptions {
  int polygon_grid = 512;  // N for the NxN interior distance grid
};

GeometricSummary summarize(const DomainSpec& spec, const SummarizeOptions& opt = {});

/// True iff the point is interior to the domain (boundary counts as outside).
bool contains(const DomainSpec& spec, const Vec2& p);

/// Distance from an interior point to the domain boundary (exact per kind,
/// polygon by edge distances). Returns a negative value for outside points
/// on kinds where the sign is cheap; callers should gate on contains().
double boundary_distance(const DomainSpec& spec, const Vec2& p);

/// One-sided inner tube of half-width h around a curve. Validates the
/// curvature bound h < min curvature radius.
DomainSpec tube_domain(const CurveSpec& curve, double h);

/// Dilation by alpha > 0 about the origin (parametric kinds scale their
/// parameters; polygons scale vertices).
DomainSpec scale(const DomainSpec& spec, double alpha);

/// JSON round-trip of the CLI domain schema
///   {"kind": "...", "params": {...}, "flags": {...}}
DomainSpec domain_from_json(const std::string& json_text);
std::string domain_to_json(const DomainSpec& spec);

/// Compact CLI form, e.g. "disk:R=1", "rectangle:w=2,h=1",
/// "tube:curve=ellipse,a=1,b=0.5,h=0.05". A leading '{' selects JSON.
DomainSpec parse_domain(const std::string& text);

}  // namespace magspec
