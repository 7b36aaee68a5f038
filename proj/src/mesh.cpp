#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "magspec/mesh.hpp"

namespace magspec {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) -
                (c.x() - a.x()) * (b.y() - a.y()));
}

void orient_ccw(TriangleMesh& m) {
  for (auto& t : m.triangles) {
    if (signed_area(m.nodes[t[0]], m.nodes[t[1]], m.nodes[t[2]]) < 0)
      std::swap(t[1], t[2]);
  }
}

double compute_h_max(const TriangleMesh& m) {
  double h = 0;
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e)
      h = std::max(h, (m.nodes[t[e]] - m.nodes[t[(e + 1) % 3]]).norm());
  return h;
}

int64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<int64_t>(a) << 32) | static_cast<uint32_t>(b);
}

// deterministic tiny jitter used to break cocircular lattice configurations
double hash_jitter(int i, int salt) {
  uint32_t x = static_cast<uint32_t>(i) * 2654435761u + salt * 40503u;
  x ^= x >> 16;
  x *= 2246822519u;
  x ^= x >> 13;
  return (static_cast<double>(x % 2000003u) / 2000003.0 - 0.5);
}

// ---------------------------------------------------------------- structured

TriangleMesh disk_mesh(double R, double h_target) {
  int m = std::max(2, static_cast<int>(std::ceil(1.05 * R / h_target)));
  TriangleMesh mesh;
  mesh.nodes.emplace_back(0, 0);
  std::vector<int> ring_start{0, 1};
  for (int k = 1; k <= m; ++k) {
    int cnt = 6 * k;
    double r = R * k / m;
    for (int j = 0; j < cnt; ++j) {
      double t = 2 * kPi * j / cnt;
      mesh.nodes.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    ring_start.push_back(static_cast<int>(mesh.nodes.size()));
  }
  for (int j = 0; j < 6; ++j)
    mesh.triangles.push_back({0, 1 + j, 1 + (j + 1) % 6});
  for (int k = 1; k < m; ++k) {
    int a0 = ring_start[k], na = 6 * k;
    int b0 = ring_start[k + 1], nb = 6 * (k + 1);
    int i = 0, j = 0;
    while (i < na || j < nb) {
      double ang_a = i < na ? 2 * kPi * (i + 1) / na : 1e18;
      double ang_b = j < nb ? 2 * kPi * (j + 1) / nb : 1e18;
      if (ang_b <= ang_a) {
        mesh.triangles.push_back({a0 + i % na, b0 + j % nb, b0 + (j + 1) % nb});
        ++j;
      } else {
        mesh.triangles.push_back({a0 + i % na, b0 + j % nb, a0 + (i + 1) % na});
        ++i;
      }
    }
  }
  int b0 = ring_start[m], nb = 6 * m;
  for (int j = 0; j < nb; ++j)
    mesh.boundary_edges.push_back({b0 + j, b0 + (j + 1) % nb, 0});
  return mesh;
}

TriangleMesh rect_mesh(double w, double h, double h_target) {
  int nx = std::max(1, static_cast<int>(std::ceil(w / h_target)));
  int ny = std::max(1, static_cast<int>(std::ceil(h / h_target)));
  TriangleMesh mesh;
  auto idx = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.nodes.emplace_back(w * i / nx, h * j / ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      int p = idx(i, j), q = idx(i + 1, j), r = idx(i + 1, j + 1), s = idx(i, j + 1);
      // alternate the diagonal for an unbiased union-jack pattern
      if ((i + j) % 2 == 0) {
        mesh.triangles.push_back({p, q, r});
        mesh.triangles.push_back({p, r, s});
      } else {
        mesh.triangles.push_back({p, q, s});
        mesh.triangles.push_back({q, r, s});
      }
    }
  }
  for (int i = 0; i < nx; ++i) mesh.boundary_edges.push_back({idx(i, 0), idx(i + 1, 0), 0});
  for (int j = 0; j < ny; ++j) mesh.boundary_edges.push_back({idx(nx, j), idx(nx, j + 1), 0});
  for (int i = nx; i > 0; --i) mesh.boundary_edges.push_back({idx(i, ny), idx(i - 1, ny), 0});
  for (int j = ny; j > 0; --j) mesh.boundary_edges.push_back({idx(0, j), idx(0, j - 1), 0});
  return mesh;
}

TriangleMesh annulus_mesh(double r_in, double r_out, double h_target) {
  int mr = std::max(1, static_cast<int>(std::ceil((r_out - r_in) / h_target)));
  int na = std::max(8, static_cast<int>(std::ceil(2 * kPi * r_out / h_target)));
  TriangleMesh mesh;
  auto idx = [&](int i, int j) { return i * na + (j % na); };
  for (int i = 0; i <= mr; ++i) {
    double r = r_in + (r_out - r_in) * i / mr;
    for (int j = 0; j < na; ++j) {
      double t = 2 * kPi * j / na;
      mesh.nodes.emplace_back(r * std::cos(t), r * std::sin(t));
    }
  }
  for (int i = 0; i < mr; ++i) {
    for (int j = 0; j < na; ++j) {
      int p = idx(i, j), q = idx(i, j + 1), r = idx(i + 1, j + 1), s = idx(i + 1, j);
      mesh.triangles.push_back({p, q, r});
      mesh.triangles.push_back({p, r, s});
    }
  }
  for (int j = 0; j < na; ++j)
    mesh.boundary_edges.push_back({idx(mr, j), idx(mr, j + 1), 0});  // outer
  for (int j = 0; j < na; ++j)
    mesh.boundary_edges.push_back({idx(0, j), idx(0, j + 1), 1});  // inner
  return mesh;
}

void laplacian_smooth(TriangleMesh& mesh, const std::vector<bool>& fixed,
                      int sweeps) {
  std::vector<std::vector<int>> nbr(mesh.nodes.size());
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      nbr[t[e]].push_back(t[(e + 1) % 3]);
      nbr[t[e]].push_back(t[(e + 2) % 3]);
    }
  }
  for (int s = 0; s < sweeps; ++s) {
    std::vector<Vec2> updated = mesh.nodes;
    for (size_t i = 0; i < mesh.nodes.size(); ++i) {
      if (fixed[i] || nbr[i].empty()) continue;
      Vec2 c = Vec2::Zero();
      for (int j : nbr[i]) c += mesh.nodes[j];
      updated[i] = c / static_cast<double>(nbr[i].size());
    }
    // reject the sweep if it inverts any triangle
    bool ok = true;
    for (const auto& t : mesh.triangles) {
      if (signed_area(updated[t[0]], updated[t[1]], updated[t[2]]) <= 0) {
        ok = false;
        break;
      }
    }
    if (!ok) return;
    mesh.nodes = std::move(updated);
  }
}

TriangleMesh cdt_mesh(const DomainSpec& spec, std::vector<Vec2> boundary,
                      double h_target);

// Disk meshes mapped onto an eccentric ellipse violate the 20-degree
// contract near the tips, so ellipses use the Delaunay pipeline with
// arclength-uniform boundary samples on the analytic curve.
TriangleMesh ellipse_mesh(double a, double b, double h_target) {
  CurveSpec c;
  c.kind = CurveKind::ellipse;
  c.a = a;
  c.b = b;
  CurveGeometry g(c);
  int nb = std::max(12, static_cast<int>(std::ceil(g.length() / h_target)));
  std::vector<Vec2> boundary(nb);
  for (int i = 0; i < nb; ++i) {
    double s = g.length() * i / nb;
    s += 0.02 * (g.length() / nb) * hash_jitter(i, 11);
    boundary[i] = g.position(s);
  }
  DomainSpec e;
  e.kind = DomainKind::ellipse;
  e.a = a;
  e.b = b;
  return cdt_mesh(e, std::move(boundary), h_target);
}

TriangleMesh tube_mesh(const DomainSpec& spec, double h_target) {
  const double hw = spec.half_width;
  if (h_target > hw)
    throw ValidationError("mesh: h_target too coarse to resolve the tube width");
  CurveGeometry g(spec.curve);
  double L = g.length();
  double shrink_min = 1.0 - hw / g.min_curvature_radius();
  double dt_target = h_target * std::min(1.0, 1.35 * std::sqrt(shrink_min));
  int mt = std::max(2, static_cast<int>(std::ceil(hw / dt_target)));
  double dt = hw / mt;

  // equidistribute tangential samples with local width dt/sqrt(1 - hw*kappa);
  // this balances the shrunken inner layer against the radial step.
  const int fine = 8192;
  std::vector<double> cum(fine + 1, 0.0);
  for (int i = 1; i <= fine; ++i) {
    double s = L * (i - 0.5) / fine;
    double shrink = std::max(1e-6, 1.0 - hw * g.curvature(s));
    cum[i] = cum[i - 1] + (L / fine) * std::sqrt(shrink) / dt;
  }
  int ms = std::max(8, static_cast<int>(std::ceil(cum[fine])));
  std::vector<double> samples(ms);
  int pos = 0;
  for (int i = 0; i < ms; ++i) {
    double target = cum[fine] * i / ms;
    while (pos < fine && cum[pos + 1] < target) ++pos;
    double c0 = cum[pos], c1 = cum[pos + 1];
    double frac = c1 > c0 ? (target - c0) / (c1 - c0) : 0.0;
    samples[i] = L * (pos + frac) / fine;
  }

  TriangleMesh mesh;
  auto idx = [&](int i, int j) { return (i % ms) * (mt + 1) + j; };
  for (int i = 0; i < ms; ++i) {
    Vec2 p = g.position(samples[i]);
    Vec2 n = g.outward_normal(samples[i]);
    for (int j = 0; j <= mt; ++j)
      mesh.nodes.emplace_back(p - (j * dt) * n);
  }
  for (int i = 0; i < ms; ++i) {
    for (int j = 0; j < mt; ++j) {
      int p = idx(i, j), q = idx(i + 1, j), r = idx(i + 1, j + 1), s = idx(i, j + 1);
      mesh.triangles.push_back({p, q, r});
      mesh.triangles.push_back({p, r, s});
    }
  }
  for (int i = 0; i < ms; ++i)
    mesh.boundary_edges.push_back({idx(i, 0), idx(i + 1, 0), 0});  // curve side
  for (int i = 0; i < ms; ++i)
    mesh.boundary_edges.push_back({idx(i, mt), idx(i + 1, mt), 1});  // offset side
  return mesh;
}

// ------------------------------------------------------------------ delaunay

struct Delaunay {
  std::vector<Vec2> pts;
  struct Tri {
    int a, b, c;
    bool alive = true;
  };
  std::vector<Tri> tris;

  // strictly-inside circumcircle test: borderline (cocircular) points are
  // treated as outside so cavities stay consistent near symmetric samples
  static bool incircle(const Vec2& a, const Vec2& b, const Vec2& c,
                       const Vec2& p) {
    long double ax = a.x() - p.x(), ay = a.y() - p.y();
    long double bx = b.x() - p.x(), by = b.y() - p.y();
    long double cx = c.x() - p.x(), cy = c.y() - p.y();
    long double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                      (bx * bx + by * by) * (ax * cy - cx * ay) +
                      (cx * cx + cy * cy) * (ax * by - bx * ay);
    long double m = std::max({std::abs(ax), std::abs(ay), std::abs(bx),
                              std::abs(by), std::abs(cx), std::abs(cy)});
    return det > 1e-11L * m * m * m * m;
  }

  void insert(int ip) {
    const Vec2& p = pts[ip];
    std::vector<int> bad;
    for (size_t t = 0; t < tris.size(); ++t) {
      if (!tris[t].alive) continue;
      if (incircle(pts[tris[t].a], pts[tris[t].b], pts[tris[t].c], p))
        bad.push_back(static_cast<int>(t));
    }
    // cavity boundary = edges of bad triangles not shared by two bad ones
    std::map<std::pair<int, int>, int> count;
    auto add = [&](int u, int v) {
      auto key = std::minmax(u, v);
      count[{key.first, key.second}]++;
    };
    for (int t : bad) {
      add(tris[t].a, tris[t].b);
      add(tris[t].b, tris[t].c);
      add(tris[t].c, tris[t].a);
      tris[t].alive = false;
    }
    for (int t : bad) {
      int v[3] = {tris[t].a, tris[t].b, tris[t].c};
      for (int e = 0; e < 3; ++e) {
        int u = v[e], w = v[(e + 1) % 3];
        auto key = std::minmax(u, w);
        if (count[{key.first, key.second}] == 1) {
          Tri nt{u, w, ip, true};
          if (signed_area(pts[nt.a], pts[nt.b], pts[nt.c]) < 0) std::swap(nt.a, nt.b);
          if (signed_area(pts[nt.a], pts[nt.b], pts[nt.c]) <= 0)
            throw SolverError("mesh: degenerate cavity triangle during Delaunay");
          tris.push_back(nt);
        }
      }
    }
  }
};

bool seg_properly_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1,
                        const Vec2& q2) {
  auto cr = [](const Vec2& o, const Vec2& u, const Vec2& v) {
    return (u.x() - o.x()) * (v.y() - o.y()) - (u.y() - o.y()) * (v.x() - o.x());
  };
  double d1 = cr(q1, q2, p1), d2 = cr(q1, q2, p2);
  double d3 = cr(p1, p2, q1), d4 = cr(p1, p2, q2);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// Delaunay meshing of a domain given its boundary samples (one closed loop,
// in order): jittered hex lattice inside, Bowyer-Watson insertion, flip
// recovery of the boundary edges, exterior removal, light smoothing.
TriangleMesh cdt_mesh(const DomainSpec& spec, std::vector<Vec2> boundary,
                      double h_target) {
  std::vector<Vec2> pts = std::move(boundary);
  int nb = static_cast<int>(pts.size());

  // interior points on a jittered hex lattice, kept clear of the boundary
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const Vec2& v : pts) {
    x0 = std::min(x0, v.x());
    x1 = std::max(x1, v.x());
    y0 = std::min(y0, v.y());
    y1 = std::max(y1, v.y());
  }
  double row_h = h_target * std::sqrt(3.0) / 2.0;
  int salt = 0;
  for (int r = 0;; ++r) {
    double y = y0 + row_h * (r + 0.5);
    if (y >= y1) break;
    double xoff = (r % 2) ? 0.5 * h_target : 0.0;
    for (int c = 0;; ++c) {
      double x = x0 + xoff + h_target * (c + 0.25);
      if (x >= x1) break;
      Vec2 p(x + 1e-5 * h_target * hash_jitter(salt, 1),
             y + 1e-5 * h_target * hash_jitter(salt, 2));
      ++salt;
      if (!contains(spec, p)) continue;
      if (boundary_distance(spec, p) < 0.7 * h_target) continue;
      pts.push_back(p);
    }
  }

  // super-triangle
  double span = std::max(x1 - x0, y1 - y0);
  Vec2 c0(0.5 * (x0 + x1), 0.5 * (y0 + y1));
  int sidx = static_cast<int>(pts.size());
  Delaunay dt;
  dt.pts = pts;
  dt.pts.push_back(c0 + Vec2(-3.1237 * span, -2.8413 * span));
  dt.pts.push_back(c0 + Vec2(3.2741 * span, -2.9321 * span));
  dt.pts.push_back(c0 + Vec2(0.0521 * span, 3.4159 * span));
  dt.tris.push_back({sidx, sidx + 1, sidx + 2, true});
  if (signed_area(dt.pts[sidx], dt.pts[sidx + 1], dt.pts[sidx + 2]) < 0)
    std::swap(dt.tris[0].b, dt.tris[0].c);
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) dt.insert(i);

  // constraint recovery: flip edges crossing a boundary segment
  auto has_edge = [&](int u, int v) {
    for (const auto& t : dt.tris) {
      if (!t.alive) continue;
      int vv[3] = {t.a, t.b, t.c};
      for (int e = 0; e < 3; ++e) {
        int p = vv[e], q = vv[(e + 1) % 3];
        if ((p == u && q == v) || (p == v && q == u)) return true;
      }
    }
    return false;
  };
  for (int i = 0; i < nb; ++i) {
    int u = i, v = (i + 1) % nb;
    int guard = 0;
    while (!has_edge(u, v)) {
      if (++guard > 256)
        throw SolverError("mesh: failed to recover polygon boundary edge");
      // find a crossing edge shared by two triangles and flip it
      bool flipped = false;
      for (size_t t1 = 0; t1 < dt.tris.size() && !flipped; ++t1) {
        if (!dt.tris[t1].alive) continue;
        int vv[3] = {dt.tris[t1].a, dt.tris[t1].b, dt.tris[t1].c};
        for (int e = 0; e < 3 && !flipped; ++e) {
          int p = vv[e], q = vv[(e + 1) % 3], r = vv[(e + 2) % 3];
          if (p == u || p == v || q == u || q == v) continue;
          if (!seg_properly_cross(dt.pts[u], dt.pts[v], dt.pts[p], dt.pts[q]))
            continue;
          // find the mate triangle across (p,q)
          for (size_t t2 = 0; t2 < dt.tris.size(); ++t2) {
            if (t2 == t1 || !dt.tris[t2].alive) continue;
            int ww[3] = {dt.tris[t2].a, dt.tris[t2].b, dt.tris[t2].c};
            int s = -1;
            int match = 0;
            for (int x : ww) {
              if (x == p || x == q)
                ++match;
              else
                s = x;
            }
            if (match != 2) continue;
            // flip (p,q) -> (r,s) if the quad is convex
            if (signed_area(dt.pts[r], dt.pts[s], dt.pts[p]) == 0 ||
                signed_area(dt.pts[r], dt.pts[s], dt.pts[q]) == 0)
              break;
            if ((signed_area(dt.pts[p], dt.pts[r], dt.pts[s]) > 0) ==
                (signed_area(dt.pts[q], dt.pts[r], dt.pts[s]) > 0))
              break;  // not convex, try another crossing edge
            dt.tris[t1].alive = false;
            dt.tris[t2].alive = false;
            Delaunay::Tri n1{r, s, p, true}, n2{s, r, q, true};
            if (signed_area(dt.pts[n1.a], dt.pts[n1.b], dt.pts[n1.c]) < 0)
              std::swap(n1.a, n1.b);
            if (signed_area(dt.pts[n2.a], dt.pts[n2.b], dt.pts[n2.c]) < 0)
              std::swap(n2.a, n2.b);
            dt.tris.push_back(n1);
            dt.tris.push_back(n2);
            flipped = true;
            break;
          }
        }
      }
      if (!flipped)
        throw SolverError("mesh: boundary edge recovery found no flippable edge");
    }
  }

  // keep triangles whose centroid lies inside the polygon
  TriangleMesh mesh;
  mesh.nodes = pts;
  for (const auto& t : dt.tris) {
    if (!t.alive) continue;
    if (t.a >= sidx || t.b >= sidx || t.c >= sidx) continue;
    Vec2 cen = (dt.pts[t.a] + dt.pts[t.b] + dt.pts[t.c]) / 3.0;
    if (!contains(spec, cen)) continue;
    mesh.triangles.push_back({t.a, t.b, t.c});
  }
  for (int i = 0; i < nb; ++i) mesh.boundary_edges.push_back({i, (i + 1) % nb, 0});

  std::vector<bool> fixed(mesh.nodes.size(), false);
  for (int i = 0; i < nb; ++i) fixed[i] = true;
  laplacian_smooth(mesh, fixed, 3);
  return mesh;
}

TriangleMesh polygon_mesh(const DomainSpec& spec, double h_target) {
  const auto& poly = spec.vertices;
  int nv = static_cast<int>(poly.size());
  // edge-interior samples carry a tiny deterministic tangential jitter
  // (staying exactly on the edge) to break the cocircular symmetry of
  // evenly spaced parallel rows
  std::vector<Vec2> boundary;
  for (int i = 0; i < nv; ++i) {
    Vec2 a = poly[i], b = poly[(i + 1) % nv];
    int seg = std::max(1, static_cast<int>(std::ceil((b - a).norm() / h_target)));
    for (int k = 0; k < seg; ++k) {
      double frac = static_cast<double>(k) / seg;
      if (k > 0) frac += 0.02 / seg * hash_jitter(i * 4099 + k, 7);
      boundary.push_back(a + (b - a) * frac);
    }
  }
  return cdt_mesh(spec, std::move(boundary), h_target);
}

Vec2 ellipse_project(double a, double b, const Vec2& p) {
  // nearest boundary point: first-quadrant stationarity scan
  double qx = std::abs(p.x()), qy = std::abs(p.y());
  auto g = [&](double t) {
    double ct = std::cos(t), st = std::sin(t);
    return -(qx - a * ct) * a * st + (qy - b * st) * b * ct;
  };
  double best_t = 0, best_d = std::numeric_limits<double>::max();
  auto consider = [&](double t) {
    double dx = qx - a * std::cos(t), dy = qy - b * std::sin(t);
    double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  };
  consider(0.0);
  consider(kPi / 2);
  const int m = 64;
  double tp = 0, gp = g(0);
  for (int i = 1; i <= m; ++i) {
    double t = (kPi / 2) * i / m;
    double gt = g(t);
    if (gp * gt < 0) {
      double lo = tp, hi = t;
      for (int it = 0; it < 70; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(lo) * g(mid) <= 0)
          hi = mid;
        else
          lo = mid;
      }
      consider(0.5 * (lo + hi));
    }
    tp = t;
    gp = gt;
  }
  Vec2 q(a * std::cos(best_t), b * std::sin(best_t));
  return {std::copysign(q.x(), p.x() == 0 ? 1.0 : p.x()),
          std::copysign(q.y(), p.y() == 0 ? 1.0 : p.y())};
}

}  // namespace

int TriangleMesh::loop_count() const {
  int m = -1;
  for (const auto& e : boundary_edges) m = std::max(m, e.loop);
  return m + 1;
}

double TriangleMesh::total_area() const {
  double s = 0;
  for (const auto& t : triangles)
    s += signed_area(nodes[t[0]], nodes[t[1]], nodes[t[2]]);
  return s;
}

void TriangleMesh::validate() const {
  int n = static_cast<int>(nodes.size());
  std::unordered_map<int64_t, int> edge_count;
  for (const auto& t : triangles) {
    for (int v : t)
      if (v < 0 || v >= n) throw ValidationError("mesh: node index out of range");
    if (signed_area(nodes[t[0]], nodes[t[1]], nodes[t[2]]) <= 0)
      throw ValidationError("mesh: triangle with non-positive area");
    for (int e = 0; e < 3; ++e) edge_count[edge_key(t[e], t[(e + 1) % 3])]++;
  }
  for (const auto& [k, c] : edge_count)
    if (c > 2) throw ValidationError("mesh: edge shared by more than two triangles");
  std::unordered_map<int64_t, int> bmark;
  for (const auto& e : boundary_edges) {
    auto it = edge_count.find(edge_key(e.a, e.b));
    if (it == edge_count.end() || it->second != 1)
      throw ValidationError("mesh: boundary edge not matching a single triangle");
    bmark[edge_key(e.a, e.b)]++;
  }
  for (const auto& [k, c] : edge_count) {
    if (c == 1 && bmark.find(k) == bmark.end())
      throw ValidationError("mesh: naked edge missing from boundary list");
  }
  // loops must close: in each loop every node has one incoming, one outgoing
  std::map<int, std::map<int, int>> deg;  // loop -> node -> out-in balance
  std::map<int, int> loop_sizes;
  for (const auto& e : boundary_edges) {
    deg[e.loop][e.a] += 1;
    deg[e.loop][e.b] -= 1;
    loop_sizes[e.loop]++;
  }
  for (const auto& [loop, balance] : deg)
    for (const auto& [node, d] : balance)
      if (d != 0) throw ValidationError("mesh: boundary loop is not closed");
}

TriangleMesh generate(const DomainSpec& spec, double h_target) {
  spec.validate();
  if (!(h_target > 0)) throw ValidationError("mesh: h_target must be > 0");
  TriangleMesh mesh;
  switch (spec.kind) {
    case DomainKind::disk: mesh = disk_mesh(spec.R, h_target); break;
    case DomainKind::rectangle: mesh = rect_mesh(spec.w, spec.h, h_target); break;
    case DomainKind::annulus:
      if (h_target > spec.r_out - spec.r_in)
        throw ValidationError("mesh: h_target too coarse to resolve the annulus gap");
      mesh = annulus_mesh(spec.r_in, spec.r_out, h_target);
      break;
    case DomainKind::ellipse: mesh = ellipse_mesh(spec.a, spec.b, h_target); break;
    case DomainKind::polygon: mesh = polygon_mesh(spec, h_target); break;
    case DomainKind::tube: mesh = tube_mesh(spec, h_target); break;
  }
  orient_ccw(mesh);
  mesh.h_max = compute_h_max(mesh);
  mesh.domain = spec;
  mesh.validate();
  MeshQuality q = quality(mesh);
  if (q.min_angle_deg < 20.0)
    throw ValidationError("mesh: h_target too coarse for a 20-degree mesh of this domain");
  return mesh;
}

TriangleMesh refine(const TriangleMesh& mesh) {
  TriangleMesh out;
  out.nodes = mesh.nodes;
  out.domain = mesh.domain;
  std::unordered_map<int64_t, int> midpoint;
  std::unordered_map<int64_t, int> boundary_loop;
  for (const auto& e : mesh.boundary_edges)
    boundary_loop[edge_key(e.a, e.b)] = e.loop;

  std::optional<CurveGeometry> curve;
  if (mesh.domain && mesh.domain->kind == DomainKind::tube)
    curve.emplace(mesh.domain->curve);

  auto project = [&](const Vec2& p, int loop) -> Vec2 {
    if (!mesh.domain) return p;
    const DomainSpec& d = *mesh.domain;
    switch (d.kind) {
      case DomainKind::disk:
        return p * (d.R / p.norm());
      case DomainKind::annulus: {
        double target = loop == 0 ? d.r_out : d.r_in;
        return p * (target / p.norm());
      }
      case DomainKind::ellipse:
        return ellipse_project(d.a, d.b, p);
      case DomainKind::tube: {
        double s = curve->nearest_arclength(p);
        if (loop == 0) return curve->position(s);
        return curve->position(s) - d.half_width * curve->outward_normal(s);
      }
      case DomainKind::rectangle:
      case DomainKind::polygon:
        return p;  // straight edges: midpoints already exact
    }
    return p;
  };

  auto mid = [&](int a, int b) {
    int64_t k = edge_key(a, b);
    auto it = midpoint.find(k);
    if (it != midpoint.end()) return it->second;
    Vec2 m = 0.5 * (mesh.nodes[a] + mesh.nodes[b]);
    auto bl = boundary_loop.find(k);
    if (bl != boundary_loop.end()) m = project(m, bl->second);
    int idx = static_cast<int>(out.nodes.size());
    out.nodes.push_back(m);
    midpoint[k] = idx;
    return idx;
  };

  for (const auto& t : mesh.triangles) {
    int m01 = mid(t[0], t[1]), m12 = mid(t[1], t[2]), m20 = mid(t[2], t[0]);
    out.triangles.push_back({t[0], m01, m20});
    out.triangles.push_back({t[1], m12, m01});
    out.triangles.push_back({t[2], m20, m12});
    out.triangles.push_back({m01, m12, m20});
  }
  for (const auto& e : mesh.boundary_edges) {
    int m = mid(e.a, e.b);
    out.boundary_edges.push_back({e.a, m, e.loop});
    out.boundary_edges.push_back({m, e.b, e.loop});
  }
  orient_ccw(out);
  out.h_max = compute_h_max(out);
  return out;
}

MeshQuality quality(const TriangleMesh& mesh) {
  MeshQuality q{180.0, 0.0, false};
  for (const auto& t : mesh.triangles) {
    const Vec2& a = mesh.nodes[t[0]];
    const Vec2& b = mesh.nodes[t[1]];
    const Vec2& c = mesh.nodes[t[2]];
    if (signed_area(a, b, c) <= 0) {
      q.degenerate = true;
      q.min_angle_deg = 0;
      continue;
    }
    const Vec2* v[3] = {&a, &b, &c};
    for (int i = 0; i < 3; ++i) {
      Vec2 u = *v[(i + 1) % 3] - *v[i];
      Vec2 w = *v[(i + 2) % 3] - *v[i];
      double ang = std::acos(std::clamp(u.dot(w) / (u.norm() * w.norm()), -1.0, 1.0));
      q.min_angle_deg = std::min(q.min_angle_deg, ang * 180.0 / kPi);
      q.h_max = std::max(q.h_max, u.norm());
    }
  }
  return q;
}

void write_text(const TriangleMesh& mesh, std::ostream& os) {
  char buf[96];
  os << mesh.nodes.size() << ' ' << mesh.triangles.size() << ' '
     << mesh.boundary_edges.size() << '\n';
  for (const Vec2& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x(), p.y());
    os << buf;
  }
  for (const auto& t : mesh.triangles)
    os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges)
    os << e.a << ' ' << e.b << ' ' << e.loop << '\n';
}

TriangleMesh read_text(std::istream& is) {
  TriangleMesh mesh;
  size_t nv, nt, nb;
  if (!(is >> nv >> nt >> nb)) throw IoError("mesh: malformed header");
  mesh.nodes.resize(nv);
  for (size_t i = 0; i < nv; ++i) {
    double x, y;
    if (!(is >> x >> y)) throw IoError("mesh: truncated node list");
    mesh.nodes[i] = Vec2(x, y);
  }
  mesh.triangles.resize(nt);
  for (size_t i = 0; i < nt; ++i) {
    if (!(is >> mesh.triangles[i][0] >> mesh.triangles[i][1] >> mesh.triangles[i][2]))
      throw IoError("mesh: truncated triangle list");
  }
  mesh.boundary_edges.resize(nb);
  for (size_t i = 0; i < nb; ++i) {
    if (!(is >> mesh.boundary_edges[i].a >> mesh.boundary_edges[i].b >>
          mesh.boundary_edges[i].loop))
      throw IoError("mesh: truncated boundary list");
  }
  mesh.h_max = compute_h_max(mesh);
  return mesh;
}

}  // namespace magspec
