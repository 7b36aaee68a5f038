#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "magspec/geometry.hpp"

namespace magspec {

/// Conforming P1 triangle mesh. Triangles are counterclockwise; boundary
/// edges are grouped into closed loops (one loop for simply connected
/// domains, two for annuli and tubes).
struct TriangleMesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  struct BoundaryEdge {
    int a, b;   // node indices, oriented along the loop
    int loop;
  };
  std::vector<BoundaryEdge> boundary_edges;
  double h_max = 0;

  // provenance, used by refine() to re-project boundary nodes
  std::optional<DomainSpec> domain;

  int loop_count() const;
  double total_area() const;
  /// Throws ValidationError when a structural invariant is violated.
  void validate() const;
};

/// Deterministic mesh generator. Guarantees h_max <= 1.5 * h_target, a
/// minimum angle of 20 degrees and boundary nodes on the analytic boundary
/// for parametric kinds.
TriangleMesh generate(const DomainSpec& spec, double h_target);

/// Uniform 4-way refinement; boundary midpoints are re-projected onto the
/// analytic boundary for parametric kinds.
TriangleMesh refine(const TriangleMesh& mesh);

struct MeshQuality {
  double min_angle_deg;
  double h_max;
  bool degenerate;  // some triangle has non-positive area
};
MeshQuality quality(const TriangleMesh& mesh);

/// Text format: "nv nt nb" header, nv lines "x y", nt lines "i j k",
/// nb lines "i j loop". Values round-trip bit-exactly.
void write_text(const TriangleMesh& mesh, std::ostream& os);
TriangleMesh read_text(std::istream& is);

}  // namespace magspec
