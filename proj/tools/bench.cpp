// Benchmark comparing the serial reference kernels against the OpenMP paths:
// magnetic element assembly (cheap and expensive potentials) and the disk
// branch scans behind the oscillation figure.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "magspec/closedform.hpp"
#include "magspec/fem.hpp"

using namespace magspec;

namespace {

template <class F>
double time_best_of(int reps, const F& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best,
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count());
  }
  return best;
}

void row(const char* name, double ts, double tp) {
  std::printf("%-34s serial %7.3fs  parallel %7.3fs  speedup %.2fx\n", name, ts,
              tp, ts / tp);
}

}  // namespace

int main() {
  std::printf("workers: %d\n", worker_count());

  DomainSpec d;
  d.kind = DomainKind::disk;
  d.R = 1.0;
  TriangleMesh mesh = generate(d, 0.008);
  std::printf("assembly mesh: %zu nodes, %zu triangles\n", mesh.nodes.size(),
              mesh.triangles.size());

  PotentialField A = standard_potential(1.0);
  row("assemble (standard potential)",
      time_best_of(3, [&] { assemble_magnetic(mesh, A, ExecMode::serial); }),
      time_best_of(3, [&] { assemble_magnetic(mesh, A, ExecMode::parallel); }));

  // an expensive pointwise potential: here the element loop dominates the
  // sparse accumulation and the parallel path pays off
  PotentialField W;
  W.tag = PotentialField::Tag::custom;
  W.eval = [](const Vec2& x) {
    double r2 = x.squaredNorm();
    double s = std::sin(8 * x.x()) * std::cos(7 * x.y()) + std::exp(-r2);
    return Vec2(-0.5 * x.y() * (1 + 0.1 * s), 0.5 * x.x() * (1 + 0.1 * s));
  };
  row("assemble (transcendental field)",
      time_best_of(3, [&] { assemble_magnetic(mesh, W, ExecMode::serial); }),
      time_best_of(3, [&] { assemble_magnetic(mesh, W, ExecMode::parallel); }));

  auto oscillation_scan = [](ExecMode mode) {
    double acc = 0;
    for (double R = 0.2; R <= 6.0 + 1e-9; R += 0.05)
      acc += disk_spectrum_points(R, 1.0, 1, mode).front().lambda;
    return acc;
  };
  row("branch oscillation scan (117 R)",
      time_best_of(2, [&] { oscillation_scan(ExecMode::serial); }),
      time_best_of(2, [&] { oscillation_scan(ExecMode::parallel); }));
  row("disk spectrum B_4, k = 40",
      time_best_of(3, [&] { disk_spectrum(4.0, 1.0, 40, ExecMode::serial); }),
      time_best_of(3, [&] { disk_spectrum(4.0, 1.0, 40, ExecMode::parallel); }));

  // the two paths must agree bit-for-bit
  HermitianSystem a = assemble_magnetic(mesh, W, ExecMode::serial);
  HermitianSystem b = assemble_magnetic(mesh, W, ExecMode::parallel);
  bool same = (a.K - b.K).norm() == 0.0 && (a.M - b.M).norm() == 0.0;
  std::printf("bit-identical assembly: %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
