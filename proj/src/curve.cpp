#include <algorithm>
#include <cmath>
#include <limits>

#include "magspec/geometry.hpp"

namespace magspec {

namespace {

// Adaptive Simpson quadrature.
double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adapt(const F& f, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, a, m);
  double right = simpson(fm, frm, fb, m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <class F>
double adaptive_quadrature(const F& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson(fa, fm, fb, a, b);
  return adapt(f, a, b, fa, fm, fb, whole, tol, 48);
}

double ellipse_speed(double a, double b, double t) {
  double st = std::sin(t), ct = std::cos(t);
  return std::sqrt(a * a * st * st + b * b * ct * ct);
}

double shoelace(const std::vector<Vec2>& pts) {
  double s = 0;
  int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % n];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

bool segments_properly_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1,
                                 const Vec2& q2) {
  auto cross = [](const Vec2& o, const Vec2& u, const Vec2& v) {
    return (u.x() - o.x()) * (v.y() - o.y()) - (u.y() - o.y()) * (v.x() - o.x());
  };
  double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2);
  double d3 = cross(p1, p2, q1), d4 = cross(p1, p2, q2);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 &&
         d3 != 0 && d4 != 0;
}

}  // namespace

void CurveSpec::validate() const {
  switch (kind) {
    case CurveKind::circle:
      if (!(R > 0)) throw ValidationError("curve: circle radius must be > 0");
      break;
    case CurveKind::ellipse:
      if (!(a > 0) || !(b > 0))
        throw ValidationError("curve: ellipse semi-axes must be > 0");
      break;
    case CurveKind::polyline: {
      if (points.size() < 3)
        throw ValidationError("curve: polyline needs at least 3 points");
      if (shoelace(points) <= 0)
        throw ValidationError("curve: polyline must be counterclockwise");
      int n = static_cast<int>(points.size());
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
          if (segments_properly_intersect(points[i], points[(i + 1) % n],
                                          points[j], points[(j + 1) % n]))
            throw ValidationError("curve: polyline is self-intersecting");
        }
      }
      break;
    }
  }
}

std::string CurveSpec::id() const {
  char buf[96];
  switch (kind) {
    case CurveKind::circle:
      std::snprintf(buf, sizeof buf, "circle:R=%.6g", R);
      return buf;
    case CurveKind::ellipse:
      std::snprintf(buf, sizeof buf, "ellipse:a=%.6g,b=%.6g", a, b);
      return buf;
    case CurveKind::polyline:
      std::snprintf(buf, sizeof buf, "polyline:%zu", points.size());
      return buf;
  }
  return "curve";
}

CurveInvariants curve_invariants(const CurveSpec& curve) {
  curve.validate();
  switch (curve.kind) {
    case CurveKind::circle:
      return {2 * kPi * curve.R, kPi * curve.R * curve.R};
    case CurveKind::ellipse: {
      double a = curve.a, b = curve.b;
      // quarter-arc by adaptive quadrature, then symmetry
      double L = 4.0 * adaptive_quadrature(
                           [&](double t) { return ellipse_speed(a, b, t); }, 0.0,
                           kPi / 2, 2.5e-13);
      return {L, kPi * a * b};
    }
    case CurveKind::polyline: {
      double L = 0;
      int n = static_cast<int>(curve.points.size());
      for (int i = 0; i < n; ++i)
        L += (curve.points[(i + 1) % n] - curve.points[i]).norm();
      return {L, shoelace(curve.points)};
    }
  }
  throw ValidationError("curve: unknown kind");
}

CurveGeometry::CurveGeometry(const CurveSpec& spec) : spec_(spec) {
  spec_.validate();
  CurveInvariants inv = curve_invariants(spec_);
  length_ = inv.length;
  area_ = inv.enclosed_area;
  switch (spec_.kind) {
    case CurveKind::circle:
      min_curv_radius_ = spec_.R;
      break;
    case CurveKind::ellipse: {
      double amax = std::max(spec_.a, spec_.b);
      double bmin = std::min(spec_.a, spec_.b);
      min_curv_radius_ = bmin * bmin / amax;
      // cumulative arclength table over the parameter
      const int m = 8192;
      s_table_.resize(m + 1);
      t_table_.resize(m + 1);
      double s = 0;
      s_table_[0] = 0;
      t_table_[0] = 0;
      double prev = ellipse_speed(spec_.a, spec_.b, 0);
      for (int i = 1; i <= m; ++i) {
        double t = 2 * kPi * i / m;
        double tm = 2 * kPi * (i - 0.5) / m;
        double cur = ellipse_speed(spec_.a, spec_.b, t);
        s += (2 * kPi / m) / 6.0 *
             (prev + 4 * ellipse_speed(spec_.a, spec_.b, tm) + cur);
        s_table_[i] = s;
        t_table_[i] = t;
        prev = cur;
      }
      // rescale so the table endpoint matches the quadrature length exactly
      double scale = length_ / s_table_[m];
      for (double& v : s_table_) v *= scale;
      break;
    }
    case CurveKind::polyline:
      min_curv_radius_ = 0;  // corners
      break;
  }
}

double CurveGeometry::param_of_arclength(double s) const {
  s = std::fmod(s, length_);
  if (s < 0) s += length_;
  auto it = std::upper_bound(s_table_.begin(), s_table_.end(), s);
  size_t i = std::min(s_table_.size() - 1,
                      static_cast<size_t>(it - s_table_.begin()));
  if (i == 0) i = 1;
  double s0 = s_table_[i - 1], s1 = s_table_[i];
  double t0 = t_table_[i - 1], t1 = t_table_[i];
  double t = t0 + (t1 - t0) * (s - s0) / std::max(s1 - s0, 1e-300);
  // Newton corrections on s(t); the table cell is narrow, so a midpoint
  // evaluation of the local arclength increment is ample
  for (int it2 = 0; it2 < 3; ++it2) {
    double sm = s0 + (t - t0) * ellipse_speed(spec_.a, spec_.b, 0.5 * (t0 + t));
    t += (s - sm) / ellipse_speed(spec_.a, spec_.b, t);
    t = std::clamp(t, t0, t1);
  }
  return t;
}

Vec2 CurveGeometry::position(double s) const {
  switch (spec_.kind) {
    case CurveKind::circle: {
      double t = s / spec_.R;
      return {spec_.R * std::cos(t), spec_.R * std::sin(t)};
    }
    case CurveKind::ellipse: {
      double t = param_of_arclength(s);
      return {spec_.a * std::cos(t), spec_.b * std::sin(t)};
    }
    case CurveKind::polyline: {
      double rem = std::fmod(s, length_);
      if (rem < 0) rem += length_;
      int n = static_cast<int>(spec_.points.size());
      for (int i = 0; i < n; ++i) {
        Vec2 p = spec_.points[i], q = spec_.points[(i + 1) % n];
        double len = (q - p).norm();
        if (rem <= len) return p + (q - p) * (rem / len);
        rem -= len;
      }
      return spec_.points[0];
    }
  }
  return Vec2::Zero();
}

Vec2 CurveGeometry::outward_normal(double s) const {
  switch (spec_.kind) {
    case CurveKind::circle: {
      double t = s / spec_.R;
      return {std::cos(t), std::sin(t)};
    }
    case CurveKind::ellipse: {
      double t = param_of_arclength(s);
      Vec2 tang(-spec_.a * std::sin(t), spec_.b * std::cos(t));
      tang.normalize();
      return {tang.y(), -tang.x()};  // CCW curve: outward = tangent rotated -90
    }
    case CurveKind::polyline: {
      // normal of the segment containing s
      double rem = std::fmod(s, length_);
      if (rem < 0) rem += length_;
      int n = static_cast<int>(spec_.points.size());
      for (int i = 0; i < n; ++i) {
        Vec2 p = spec_.points[i], q = spec_.points[(i + 1) % n];
        double len = (q - p).norm();
        if (rem <= len) {
          Vec2 tang = (q - p) / len;
          return {tang.y(), -tang.x()};
        }
        rem -= len;
      }
      return Vec2::Zero();
    }
  }
  return Vec2::Zero();
}

double CurveGeometry::curvature(double s) const {
  switch (spec_.kind) {
    case CurveKind::circle:
      return 1.0 / spec_.R;
    case CurveKind::ellipse: {
      double t = param_of_arclength(s);
      double st = std::sin(t), ct = std::cos(t);
      double g = spec_.a * spec_.a * st * st + spec_.b * spec_.b * ct * ct;
      return spec_.a * spec_.b / (g * std::sqrt(g));
    }
    case CurveKind::polyline:
      return 0;
  }
  return 0;
}

double CurveGeometry::nearest_arclength(const Vec2& p) const {
  // coarse scan then ternary refinement on the squared distance
  const int m = 512;
  double best_s = 0, best_d = std::numeric_limits<double>::max();
  for (int i = 0; i < m; ++i) {
    double s = length_ * i / m;
    double d = (position(s) - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best_s = s;
    }
  }
  double lo = best_s - length_ / m, hi = best_s + length_ / m;
  for (int it = 0; it < 60; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if ((position(m1) - p).squaredNorm() < (position(m2) - p).squaredNorm())
      hi = m2;
    else
      lo = m1;
  }
  double s = 0.5 * (lo + hi);
  if (s < 0) s += length_;
  return std::fmod(s, length_);
}

double CurveGeometry::distance(const Vec2& p) const {
  return (position(nearest_arclength(p)) - p).norm();
}

bool CurveGeometry::encloses(const Vec2& p) const {
  switch (spec_.kind) {
    case CurveKind::circle:
      return p.norm() < spec_.R;
    case CurveKind::ellipse: {
      double u = p.x() / spec_.a, v = p.y() / spec_.b;
      return u * u + v * v < 1.0;
    }
    case CurveKind::polyline: {
      bool in = false;
      int n = static_cast<int>(spec_.points.size());
      for (int i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& pi = spec_.points[i];
        const Vec2& pj = spec_.points[j];
        if ((pi.y() > p.y()) != (pj.y() > p.y()) &&
            p.x() < (pj.x() - pi.x()) * (p.y() - pi.y()) / (pj.y() - pi.y()) +
                        pi.x())
          in = !in;
      }
      return in;
    }
  }
  return false;
}

}  // namespace magspec
