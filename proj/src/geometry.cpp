#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "magspec/geometry.hpp"

namespace magspec {

namespace {

double shoelace(const std::vector<Vec2>& pts) {
  double s = 0;
  int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    s += pts[i].x() * pts[(i + 1) % n].y() - pts[(i + 1) % n].x() * pts[i].y();
  return 0.5 * s;
}

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 ab = b - a;
  double t = ab.squaredNorm() > 0 ? (p - a).dot(ab) / ab.squaredNorm() : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
  bool in = false;
  int n = static_cast<int>(poly.size());
  for (int i = 0, j = n - 1; i < n; j = i++) {
    if ((poly[i].y() > p.y()) != (poly[j].y() > p.y()) &&
        p.x() < (poly[j].x() - poly[i].x()) * (p.y() - poly[i].y()) /
                        (poly[j].y() - poly[i].y()) +
                    poly[i].x())
      in = !in;
  }
  return in;
}

double dist_to_polygon_boundary(const std::vector<Vec2>& poly, const Vec2& p) {
  double d = std::numeric_limits<double>::max();
  int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i)
    d = std::min(d, dist_point_segment(p, poly[i], poly[(i + 1) % n]));
  return d;
}

// Distance from p to the ellipse x^2/a^2 + y^2/b^2 = 1. Scans the first
// quadrant stationarity condition for all critical points.
double ellipse_boundary_dist(double a, double b, const Vec2& p) {
  double qx = std::abs(p.x()), qy = std::abs(p.y());
  auto g = [&](double t) {
    double ct = std::cos(t), st = std::sin(t);
    return -(qx - a * ct) * a * st + (qy - b * st) * b * ct;
  };
  auto dist_at = [&](double t) {
    double dx = qx - a * std::cos(t), dy = qy - b * std::sin(t);
    return std::hypot(dx, dy);
  };
  double best = std::min(dist_at(0.0), dist_at(kPi / 2));
  const int m = 64;
  double tp = 0, gp = g(0);
  for (int i = 1; i <= m; ++i) {
    double t = (kPi / 2) * i / m;
    double gt = g(t);
    if (gp == 0) best = std::min(best, dist_at(tp));
    if (gp * gt < 0) {
      double lo = tp, hi = t;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(lo) * g(mid) <= 0)
          hi = mid;
        else
          lo = mid;
      }
      best = std::min(best, dist_at(0.5 * (lo + hi)));
    }
    tp = t;
    gp = gt;
  }
  return best;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& u, const Vec2& v) {
    return u.x() < v.x() || (u.x() == v.x() && u.y() < v.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& u, const Vec2& v) { return u == v; }),
            pts.end());
  int n = static_cast<int>(pts.size());
  if (n < 3) return pts;
  auto cross = [](const Vec2& o, const Vec2& u, const Vec2& v) {
    return (u.x() - o.x()) * (v.y() - o.y()) - (u.y() - o.y()) * (v.x() - o.x());
  };
  std::vector<Vec2> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double hull_width(const std::vector<Vec2>& hull) {
  int n = static_cast<int>(hull.size());
  if (n < 3) return 0;
  double w = std::numeric_limits<double>::max();
  for (int i = 0; i < n; ++i) {
    Vec2 e = hull[(i + 1) % n] - hull[i];
    double len = e.norm();
    if (len == 0) continue;
    Vec2 nrm(-e.y() / len, e.x() / len);
    double hmax = 0;
    for (const Vec2& q : hull)
      hmax = std::max(hmax, std::abs(nrm.dot(q - hull[i])));
    w = std::min(w, hmax);
  }
  return w;
}

double hull_diameter(const std::vector<Vec2>& hull) {
  double d = 0;
  for (size_t i = 0; i < hull.size(); ++i)
    for (size_t j = i + 1; j < hull.size(); ++j)
      d = std::max(d, (hull[i] - hull[j]).norm());
  return d;
}

struct Circle {
  Vec2 c;
  double r;
};

Circle circle_from(const Vec2& a, const Vec2& b) {
  return {(a + b) / 2, (a - b).norm() / 2};
}

Circle circle_from(const Vec2& a, const Vec2& b, const Vec2& c) {
  double ax = a.x(), ay = a.y(), bx = b.x(), by = b.y(), cx = c.x(), cy = c.y();
  double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (std::abs(d) < 1e-300) return {Vec2::Zero(), std::numeric_limits<double>::max()};
  double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) +
               (cx * cx + cy * cy) * (ay - by)) /
              d;
  double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) +
               (cx * cx + cy * cy) * (bx - ax)) /
              d;
  Vec2 ctr(ux, uy);
  return {ctr, (ctr - a).norm()};
}

bool in_circle(const Circle& c, const Vec2& p) {
  return (p - c.c).norm() <= c.r * (1 + 1e-12) + 1e-300;
}

// Welzl's minimum enclosing circle with a fixed shuffle for determinism.
Circle min_enclosing_circle(std::vector<Vec2> pts) {
  std::mt19937 rng(12345);
  std::shuffle(pts.begin(), pts.end(), rng);
  Circle c{pts[0], 0};
  int n = static_cast<int>(pts.size());
  for (int i = 1; i < n; ++i) {
    if (in_circle(c, pts[i])) continue;
    c = {pts[i], 0};
    for (int j = 0; j < i; ++j) {
      if (in_circle(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (int k = 0; k < j; ++k) {
        if (in_circle(c, pts[k])) continue;
        c = circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

const char* kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::disk: return "disk";
    case DomainKind::rectangle: return "rectangle";
    case DomainKind::annulus: return "annulus";
    case DomainKind::ellipse: return "ellipse";
    case DomainKind::polygon: return "polygon";
    case DomainKind::tube: return "tube";
  }
  return "?";
}

}  // namespace

void DomainSpec::validate() const {
  switch (kind) {
    case DomainKind::disk:
      if (!(R > 0)) throw ValidationError("disk: radius R must be > 0");
      break;
    case DomainKind::rectangle:
      if (!(w > 0) || !(h > 0))
        throw ValidationError("rectangle: sides w,h must be > 0");
      break;
    case DomainKind::annulus:
      if (!(r_in > 0)) throw ValidationError("annulus: r_in must be > 0");
      if (!(r_out > r_in)) throw ValidationError("annulus: requires r_in < r_out");
      break;
    case DomainKind::ellipse:
      if (!(a > 0) || !(b > 0))
        throw ValidationError("ellipse: semi-axes a,b must be > 0");
      break;
    case DomainKind::polygon: {
      CurveSpec c;
      c.kind = CurveKind::polyline;
      c.points = vertices;
      try {
        c.validate();
      } catch (const ValidationError& e) {
        throw ValidationError(std::string("polygon: ") + e.what());
      }
      break;
    }
    case DomainKind::tube: {
      curve.validate();
      if (!(half_width > 0)) throw ValidationError("tube: half-width must be > 0");
      CurveGeometry g(curve);
      if (!(half_width < g.min_curvature_radius()))
        throw ValidationError(
            "tube: half-width must be below the curve's minimal curvature "
            "radius");
      break;
    }
  }
}

std::string DomainSpec::id() const {
  char buf[160];
  switch (kind) {
    case DomainKind::disk:
      std::snprintf(buf, sizeof buf, "disk:R=%.6g", R);
      return buf;
    case DomainKind::rectangle:
      std::snprintf(buf, sizeof buf, "rectangle:%.6gx%.6g", w, h);
      return buf;
    case DomainKind::annulus:
      std::snprintf(buf, sizeof buf, "annulus:%.6g<r<%.6g", r_in, r_out);
      return buf;
    case DomainKind::ellipse:
      std::snprintf(buf, sizeof buf, "ellipse:a=%.6g,b=%.6g", a, b);
      return buf;
    case DomainKind::polygon:
      std::snprintf(buf, sizeof buf, "polygon:%zu", vertices.size());
      return buf;
    case DomainKind::tube:
      std::snprintf(buf, sizeof buf, "tube[%s]:h=%.6g", curve.id().c_str(),
                    half_width);
      return buf;
  }
  return "domain";
}

bool DomainSpec::simply_connected() const {
  return kind != DomainKind::annulus && kind != DomainKind::tube;
}

GeometricSummary summarize(const DomainSpec& spec, const SummarizeOptions& opt) {
  spec.validate();
  GeometricSummary s;
  s.simply_connected = spec.simply_connected();
  switch (spec.kind) {
    case DomainKind::disk:
      s.area = kPi * spec.R * spec.R;
      s.perimeter = 2 * kPi * spec.R;
      s.circumradius = spec.R;
      s.inradius = spec.R;
      s.width = 2 * spec.R;
      s.diameter = 2 * spec.R;
      s.rolling_radius = spec.R;
      s.rolling_radius_defined = true;
      break;
    case DomainKind::rectangle:
      s.area = spec.w * spec.h;
      s.perimeter = 2 * (spec.w + spec.h);
      s.circumradius = 0.5 * std::hypot(spec.w, spec.h);
      s.inradius = 0.5 * std::min(spec.w, spec.h);
      s.width = std::min(spec.w, spec.h);
      s.diameter = std::hypot(spec.w, spec.h);
      s.rolling_radius = 0;  // corners
      s.rolling_radius_defined = false;
      break;
    case DomainKind::annulus:
      s.area = kPi * (spec.r_out * spec.r_out - spec.r_in * spec.r_in);
      s.perimeter = 2 * kPi * (spec.r_in + spec.r_out);
      s.circumradius = spec.r_out;
      s.inradius = 0.5 * (spec.r_out - spec.r_in);
      s.width = 2 * spec.r_out;
      s.diameter = 2 * spec.r_out;
      s.rolling_radius = 0.5 * (spec.r_out - spec.r_in);
      s.rolling_radius_defined = true;
      break;
    case DomainKind::ellipse: {
      double amax = std::max(spec.a, spec.b), bmin = std::min(spec.a, spec.b);
      CurveSpec c;
      c.kind = CurveKind::ellipse;
      c.a = spec.a;
      c.b = spec.b;
      s.area = kPi * spec.a * spec.b;
      s.perimeter = curve_invariants(c).length;
      s.circumradius = amax;
      s.inradius = bmin;
      s.width = 2 * bmin;
      s.diameter = 2 * amax;
      s.rolling_radius = bmin * bmin / amax;
      s.rolling_radius_defined = true;
      break;
    }
    case DomainKind::polygon: {
      s.area = shoelace(spec.vertices);
      double per = 0;
      int n = static_cast<int>(spec.vertices.size());
      for (int i = 0; i < n; ++i)
        per += (spec.vertices[(i + 1) % n] - spec.vertices[i]).norm();
      s.perimeter = per;
      auto hull = convex_hull(spec.vertices);
      s.circumradius = min_enclosing_circle(spec.vertices).r;
      s.width = hull_width(hull);
      s.diameter = hull_diameter(hull);
      // inradius by sampled distance transform over the bounding box
      double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
      for (const Vec2& v : spec.vertices) {
        x0 = std::min(x0, v.x());
        x1 = std::max(x1, v.x());
        y0 = std::min(y0, v.y());
        y1 = std::max(y1, v.y());
      }
      int N = std::max(8, opt.polygon_grid);
      double dx = (x1 - x0) / N, dy = (y1 - y0) / N;
      double best = 0;
      for (int iy = 0; iy < N; ++iy) {
        for (int ix = 0; ix < N; ++ix) {
          Vec2 p(x0 + (ix + 0.5) * dx, y0 + (iy + 0.5) * dy);
          if (!point_in_polygon(spec.vertices, p)) continue;
          best = std::max(best, dist_to_polygon_boundary(spec.vertices, p));
        }
      }
      s.inradius = best;
      s.inradius_uncertainty = std::hypot(dx, dy);
      s.rolling_radius = 0;
      s.rolling_radius_defined = false;
      break;
    }
    case DomainKind::tube: {
      CurveGeometry g(spec.curve);
      double L = g.length(), h = spec.half_width;
      // parallel-set identity A(r) = A(0) - L(0) r + pi r^2
      s.area = L * h - kPi * h * h;
      s.perimeter = 2 * L - 2 * kPi * h;
      switch (spec.curve.kind) {
        case CurveKind::circle:
          s.circumradius = spec.curve.R;
          s.width = 2 * spec.curve.R;
          s.diameter = 2 * spec.curve.R;
          break;
        case CurveKind::ellipse: {
          double amax = std::max(spec.curve.a, spec.curve.b);
          double bmin = std::min(spec.curve.a, spec.curve.b);
          s.circumradius = amax;
          s.width = 2 * bmin;
          s.diameter = 2 * amax;
          break;
        }
        case CurveKind::polyline: {
          s.circumradius = min_enclosing_circle(spec.curve.points).r;
          auto hull = convex_hull(spec.curve.points);
          s.width = hull_width(hull);
          s.diameter = hull_diameter(hull);
          break;
        }
      }
      s.inradius = h / 2;
      s.rolling_radius = h / 2;
      s.rolling_radius_defined = true;
      break;
    }
  }
  return s;
}

bool contains(const DomainSpec& spec, const Vec2& p) {
  switch (spec.kind) {
    case DomainKind::disk:
      return p.norm() < spec.R;
    case DomainKind::rectangle:
      return p.x() > 0 && p.x() < spec.w && p.y() > 0 && p.y() < spec.h;
    case DomainKind::annulus: {
      double r = p.norm();
      return r > spec.r_in && r < spec.r_out;
    }
    case DomainKind::ellipse: {
      double u = p.x() / spec.a, v = p.y() / spec.b;
      return u * u + v * v < 1.0;
    }
    case DomainKind::polygon:
      if (dist_to_polygon_boundary(spec.vertices, p) < 1e-12) return false;
      return point_in_polygon(spec.vertices, p);
    case DomainKind::tube: {
      switch (spec.curve.kind) {
        case CurveKind::circle: {
          double r = p.norm();
          return r > spec.curve.R - spec.half_width && r < spec.curve.R;
        }
        case CurveKind::ellipse: {
          double u = p.x() / spec.curve.a, v = p.y() / spec.curve.b;
          if (u * u + v * v >= 1.0) return false;
          double d = ellipse_boundary_dist(spec.curve.a, spec.curve.b, p);
          return d < spec.half_width;
        }
        case CurveKind::polyline:
          return false;  // tubes are defined for smooth curves only
      }
      return false;
    }
  }
  return false;
}

double boundary_distance(const DomainSpec& spec, const Vec2& p) {
  switch (spec.kind) {
    case DomainKind::disk:
      return spec.R - p.norm();
    case DomainKind::rectangle:
      return std::min(std::min(p.x(), spec.w - p.x()),
                      std::min(p.y(), spec.h - p.y()));
    case DomainKind::annulus:
      return std::min(p.norm() - spec.r_in, spec.r_out - p.norm());
    case DomainKind::ellipse: {
      double d = ellipse_boundary_dist(spec.a, spec.b, p);
      return contains(spec, p) ? d : -d;
    }
    case DomainKind::polygon: {
      double d = dist_to_polygon_boundary(spec.vertices, p);
      return point_in_polygon(spec.vertices, p) ? d : -d;
    }
    case DomainKind::tube: {
      if (spec.curve.kind == CurveKind::circle) {
        double d = spec.curve.R - p.norm();  // distance to the curve, signed
        if (d < 0) return d;
        return std::min(d, spec.half_width - d);
      }
      if (spec.curve.kind == CurveKind::ellipse) {
        double d = ellipse_boundary_dist(spec.curve.a, spec.curve.b, p);
        double u = p.x() / spec.curve.a, v = p.y() / spec.curve.b;
        if (u * u + v * v >= 1.0) return -d;
        return std::min(d, spec.half_width - d);
      }
      return -1;
    }
  }
  return 0;
}

DomainSpec tube_domain(const CurveSpec& curve, double h) {
  curve.validate();
  if (!(h > 0)) throw ValidationError("tube: half-width must be > 0");
  CurveGeometry g(curve);
  if (!(h < g.min_curvature_radius()))
    throw ValidationError(
        "tube: half-width must be below the curve's minimal curvature radius");
  DomainSpec d;
  d.kind = DomainKind::tube;
  d.curve = curve;
  d.half_width = h;
  return d;
}

DomainSpec scale(const DomainSpec& spec, double alpha) {
  if (!(alpha > 0)) throw ValidationError("scale: alpha must be > 0");
  DomainSpec s = spec;
  switch (spec.kind) {
    case DomainKind::disk: s.R *= alpha; break;
    case DomainKind::rectangle: s.w *= alpha; s.h *= alpha; break;
    case DomainKind::annulus: s.r_in *= alpha; s.r_out *= alpha; break;
    case DomainKind::ellipse: s.a *= alpha; s.b *= alpha; break;
    case DomainKind::polygon:
      for (Vec2& v : s.vertices) v *= alpha;
      break;
    case DomainKind::tube:
      s.half_width *= alpha;
      switch (s.curve.kind) {
        case CurveKind::circle: s.curve.R *= alpha; break;
        case CurveKind::ellipse: s.curve.a *= alpha; s.curve.b *= alpha; break;
        case CurveKind::polyline:
          for (Vec2& v : s.curve.points) v *= alpha;
          break;
      }
      break;
  }
  // strip flag coordinates are pose-dependent; drop them under scaling
  s.flags.strip.reset();
  return s;
}

namespace {

CurveSpec curve_from_json(const nlohmann::json& j) {
  CurveSpec c;
  std::string kind = j.at("kind").get<std::string>();
  const auto& p = j.at("params");
  if (kind == "circle") {
    c.kind = CurveKind::circle;
    c.R = p.at("R").get<double>();
  } else if (kind == "ellipse") {
    c.kind = CurveKind::ellipse;
    c.a = p.at("a").get<double>();
    c.b = p.at("b").get<double>();
  } else if (kind == "polyline") {
    c.kind = CurveKind::polyline;
    for (const auto& v : p.at("points"))
      c.points.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  } else {
    throw ValidationError("curve: unknown kind '" + kind + "'");
  }
  return c;
}

nlohmann::json curve_to_json(const CurveSpec& c) {
  nlohmann::json j;
  switch (c.kind) {
    case CurveKind::circle:
      j["kind"] = "circle";
      j["params"]["R"] = c.R;
      break;
    case CurveKind::ellipse:
      j["kind"] = "ellipse";
      j["params"]["a"] = c.a;
      j["params"]["b"] = c.b;
      break;
    case CurveKind::polyline: {
      j["kind"] = "polyline";
      auto arr = nlohmann::json::array();
      for (const Vec2& v : c.points) arr.push_back({v.x(), v.y()});
      j["params"]["points"] = arr;
      break;
    }
  }
  return j;
}

}  // namespace

DomainSpec domain_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("domain JSON parse failure: ") + e.what());
  }
  DomainSpec d;
  std::string kind = j.at("kind").get<std::string>();
  const auto params = j.value("params", nlohmann::json::object());
  if (kind == "disk") {
    d.kind = DomainKind::disk;
    d.R = params.at("R").get<double>();
  } else if (kind == "rectangle") {
    d.kind = DomainKind::rectangle;
    d.w = params.at("w").get<double>();
    d.h = params.at("h").get<double>();
  } else if (kind == "annulus") {
    d.kind = DomainKind::annulus;
    d.r_in = params.at("r_in").get<double>();
    d.r_out = params.at("r_out").get<double>();
  } else if (kind == "ellipse") {
    d.kind = DomainKind::ellipse;
    d.a = params.at("a").get<double>();
    d.b = params.at("b").get<double>();
  } else if (kind == "polygon") {
    d.kind = DomainKind::polygon;
    for (const auto& v : params.at("vertices"))
      d.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  } else if (kind == "tube") {
    d.kind = DomainKind::tube;
    d.half_width = params.at("half_width").get<double>();
    d.curve = curve_from_json(j.at("curve"));
  } else {
    throw ValidationError("domain: unknown kind '" + kind + "'");
  }
  if (j.contains("flags")) {
    const auto& f = j["flags"];
    if (f.contains("is_subgraph")) d.flags.is_subgraph = f["is_subgraph"].get<bool>();
    if (f.contains("self_tiling_Lambda"))
      d.flags.self_tiling_Lambda = f["self_tiling_Lambda"].get<double>();
    if (f.contains("strip")) {
      ClassFlags::Strip s{};
      s.x_lo = f["strip"].at("x_lo").get<double>();
      s.x_hi = f["strip"].at("x_hi").get<double>();
      s.height = f["strip"].at("height").get<double>();
      d.flags.strip = s;
    }
  }
  d.validate();
  return d;
}

std::string domain_to_json(const DomainSpec& d) {
  nlohmann::json j;
  j["kind"] = kind_name(d.kind);
  switch (d.kind) {
    case DomainKind::disk: j["params"]["R"] = d.R; break;
    case DomainKind::rectangle:
      j["params"]["w"] = d.w;
      j["params"]["h"] = d.h;
      break;
    case DomainKind::annulus:
      j["params"]["r_in"] = d.r_in;
      j["params"]["r_out"] = d.r_out;
      break;
    case DomainKind::ellipse:
      j["params"]["a"] = d.a;
      j["params"]["b"] = d.b;
      break;
    case DomainKind::polygon: {
      auto arr = nlohmann::json::array();
      for (const Vec2& v : d.vertices) arr.push_back({v.x(), v.y()});
      j["params"]["vertices"] = arr;
      break;
    }
    case DomainKind::tube:
      j["params"]["half_width"] = d.half_width;
      j["curve"] = curve_to_json(d.curve);
      break;
  }
  if (d.flags.is_subgraph) j["flags"]["is_subgraph"] = *d.flags.is_subgraph;
  if (d.flags.self_tiling_Lambda)
    j["flags"]["self_tiling_Lambda"] = *d.flags.self_tiling_Lambda;
  if (d.flags.strip) {
    j["flags"]["strip"]["x_lo"] = d.flags.strip->x_lo;
    j["flags"]["strip"]["x_hi"] = d.flags.strip->x_hi;
    j["flags"]["strip"]["height"] = d.flags.strip->height;
  }
  return j.dump();
}

DomainSpec parse_domain(const std::string& text) {
  if (!text.empty() && text[0] == '{') return domain_from_json(text);
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::map<std::string, double> kv;
  std::string curve_kind;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw ValidationError("domain: bad key=value item '" + item + "'");
      std::string key = item.substr(0, eq), val = item.substr(eq + 1);
      if (key == "curve")
        curve_kind = val;
      else {
        try {
          kv[key] = std::stod(val);
        } catch (...) {
          throw ValidationError("domain: non-numeric value in '" + item + "'");
        }
      }
    }
  }
  auto need = [&](const char* k) {
    auto it = kv.find(k);
    if (it == kv.end())
      throw ValidationError(std::string("domain: missing parameter '") + k + "'");
    return it->second;
  };
  DomainSpec d;
  if (kind == "disk") {
    d.kind = DomainKind::disk;
    d.R = need("R");
  } else if (kind == "rectangle" || kind == "rect") {
    d.kind = DomainKind::rectangle;
    d.w = need("w");
    d.h = need("h");
  } else if (kind == "annulus") {
    d.kind = DomainKind::annulus;
    d.r_in = need("r_in");
    d.r_out = need("r_out");
  } else if (kind == "ellipse") {
    d.kind = DomainKind::ellipse;
    d.a = need("a");
    d.b = need("b");
  } else if (kind == "tube") {
    d.kind = DomainKind::tube;
    d.half_width = need("h");
    if (curve_kind == "circle") {
      d.curve.kind = CurveKind::circle;
      d.curve.R = need("R");
    } else if (curve_kind == "ellipse") {
      d.curve.kind = CurveKind::ellipse;
      d.curve.a = need("a");
      d.curve.b = need("b");
    } else {
      throw ValidationError("tube: curve must be 'circle' or 'ellipse'");
    }
  } else {
    throw ValidationError("domain: unknown kind '" + kind + "'");
  }
  d.validate();
  return d;
}

}  // namespace magspec
