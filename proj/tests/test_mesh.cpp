#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "magspec/mesh.hpp"

using namespace magspec;

namespace {

DomainSpec disk(double R) {
  DomainSpec d;
  d.kind = DomainKind::disk;
  d.R = R;
  return d;
}

DomainSpec rect(double w, double h) {
  DomainSpec d;
  d.kind = DomainKind::rectangle;
  d.w = w;
  d.h = h;
  return d;
}

int euler_characteristic(const TriangleMesh& m) {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : m.triangles) {
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return static_cast<int>(m.nodes.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(m.triangles.size());
}

}  // namespace

TEST_CASE("disk mesh area converges at second order") {
  TriangleMesh m = generate(disk(1), 0.1);
  double err0 = std::abs(m.total_area() - kPi);
  CHECK(err0 < 0.02);
  TriangleMesh m1 = refine(m);
  TriangleMesh m2 = refine(m1);
  double err2 = std::abs(m2.total_area() - kPi);
  CHECK(err0 / err2 > 10.0);  // two refinements: about 16x
  CHECK(err0 / err2 < 30.0);
}

TEST_CASE("rectangle mesh area is exact") {
  TriangleMesh m = generate(rect(2, 1), 0.25);
  CHECK(m.total_area() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(m.h_max <= 1.5 * 0.25);
}

TEST_CASE("annulus mesh has two boundary loops") {
  DomainSpec a;
  a.kind = DomainKind::annulus;
  a.r_in = 1;
  a.r_out = 2;
  TriangleMesh m = generate(a, 0.1);
  CHECK(m.loop_count() == 2);
  CHECK(euler_characteristic(m) == 0);
  TriangleMesh r = refine(m);
  CHECK(r.loop_count() == 2);
}

TEST_CASE("refinement quadruples the triangle count") {
  TriangleMesh m = generate(disk(1), 0.3);
  TriangleMesh r = refine(m);
  CHECK(r.triangles.size() == 4 * m.triangles.size());
  CHECK(r.loop_count() == m.loop_count());
  r.validate();
}

TEST_CASE("boundary nodes sit on the analytic boundary") {
  for (const auto& spec : {disk(1.0), disk(2.5)}) {
    TriangleMesh m = generate(spec, 0.2);
    TriangleMesh r = refine(m);
    for (const auto& e : r.boundary_edges) {
      CHECK(std::abs(r.nodes[e.a].norm() - spec.R) <= 1e-12 * spec.R);
      CHECK(std::abs(r.nodes[e.b].norm() - spec.R) <= 1e-12 * spec.R);
    }
  }
}

TEST_CASE("euler characteristic of simply connected meshes") {
  CHECK(euler_characteristic(generate(disk(1), 0.2)) == 1);
  CHECK(euler_characteristic(generate(rect(1, 1), 0.2)) == 1);
}

TEST_CASE("quality report") {
  TriangleMesh sq = generate(rect(1, 1), 0.25);
  MeshQuality q = quality(sq);
  CHECK(q.min_angle_deg == doctest::Approx(45.0).epsilon(1e-9));

  TriangleMesh dm = generate(disk(1), 0.1);
  CHECK(quality(dm).min_angle_deg >= 20.0);

  // inject a degenerate triangle
  TriangleMesh bad = sq;
  bad.nodes.push_back(bad.nodes[0]);
  bad.nodes.push_back(bad.nodes[1]);
  int n = static_cast<int>(bad.nodes.size());
  bad.triangles.push_back({0, n - 2, n - 1});
  CHECK(quality(bad).degenerate);
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("tube meshes resolve the strip and carry two loops") {
  CurveSpec c;
  c.kind = CurveKind::circle;
  c.R = std::sqrt(2.0);
  DomainSpec t = tube_domain(c, 0.1);
  CHECK_THROWS_AS(generate(t, 0.2), ValidationError);  // coarser than the width
  TriangleMesh m = generate(t, 0.025);
  CHECK(m.loop_count() == 2);
  CHECK(euler_characteristic(m) == 0);
  GeometricSummary s = summarize(t);
  CHECK(std::abs(m.total_area() - s.area) / s.area < 5e-3);
  CHECK(quality(m).min_angle_deg >= 20.0);

  CurveSpec e;
  e.kind = CurveKind::ellipse;
  e.a = 1;
  e.b = 0.5;
  DomainSpec te = tube_domain(e, 0.2);
  TriangleMesh me = generate(te, 0.05);
  CHECK(me.loop_count() == 2);
  CHECK(quality(me).min_angle_deg >= 20.0);
  GeometricSummary se = summarize(te);
  CHECK(std::abs(me.total_area() - se.area) / se.area < 2e-2);
}

TEST_CASE("polygon meshing via constrained Delaunay") {
  DomainSpec p;
  p.kind = DomainKind::polygon;
  p.vertices = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};  // L-shape
  TriangleMesh m = generate(p, 0.15);
  m.validate();
  CHECK(quality(m).min_angle_deg >= 20.0);
  CHECK(m.total_area() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(euler_characteristic(m) == 1);
  CHECK(m.h_max <= 1.5 * 0.15);
}

TEST_CASE("non-convex star polygon meshes at quality") {
  DomainSpec star;
  star.kind = DomainKind::polygon;
  for (int i = 0; i < 10; ++i) {
    double r = (i % 2 == 0) ? 1.0 : 0.45;
    double t = kPi / 2 + 2 * kPi * i / 10;
    star.vertices.push_back({r * std::cos(t), r * std::sin(t)});
  }
  TriangleMesh m = generate(star, 0.08);
  m.validate();
  CHECK(quality(m).min_angle_deg >= 20.0);
  // area of the mesh equals the polygon's shoelace area
  double area = 0;
  int n = 10;
  for (int i = 0; i < n; ++i) {
    const Vec2& p = star.vertices[i];
    const Vec2& q = star.vertices[(i + 1) % n];
    area += 0.5 * (p.x() * q.y() - q.x() * p.y());
  }
  CHECK(m.total_area() == doctest::Approx(area).epsilon(1e-12));
  CHECK(euler_characteristic(m) == 1);
}

TEST_CASE("ellipse mesh quality") {
  DomainSpec e;
  e.kind = DomainKind::ellipse;
  e.a = 1;
  e.b = 0.5;
  TriangleMesh m = generate(e, 0.07);
  CHECK(quality(m).min_angle_deg >= 20.0);
  CHECK(std::abs(m.total_area() - kPi / 2) / (kPi / 2) < 2e-2);
}

TEST_CASE("text format round-trips bit-exactly") {
  TriangleMesh m = generate(disk(1), 0.22);
  std::stringstream first;
  write_text(m, first);
  TriangleMesh back = read_text(first);
  REQUIRE(back.nodes.size() == m.nodes.size());
  for (size_t i = 0; i < m.nodes.size(); ++i) {
    CHECK(back.nodes[i].x() == m.nodes[i].x());
    CHECK(back.nodes[i].y() == m.nodes[i].y());
  }
  std::stringstream second;
  write_text(back, second);
  CHECK(first.str() == second.str());
}
