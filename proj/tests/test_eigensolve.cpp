#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "magspec/closedform.hpp"
#include "magspec/eigensolve.hpp"
#include "oracles.hpp"

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

HermitianSystem tiny_diag() {
  HermitianSystem sys;
  sys.n = 2;
  sys.K.resize(2, 2);
  sys.M.resize(2, 2);
  std::vector<Eigen::Triplet<std::complex<double>>> tk{{0, 0, 1.0}, {1, 1, 2.0}};
  std::vector<Eigen::Triplet<double>> tm{{0, 0, 1.0}, {1, 1, 1.0}};
  sys.K.setFromTriplets(tk.begin(), tk.end());
  sys.M.setFromTriplets(tm.begin(), tm.end());
  sys.positive_definite = true;
  return sys;
}

}  // namespace

TEST_CASE("diagonal pencil") {
  Spectrum sp = smallest(tiny_diag(), 2, 1e-12);
  CHECK(sp.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(sp.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-11));
  CHECK_THROWS_AS(smallest(tiny_diag(), 3, 1e-8), ValidationError);
}

TEST_CASE("neumann laplacian of the unit square") {
  TriangleMesh m = generate(rect(1, 1), 0.05);
  HermitianSystem sys = assemble_magnetic(m, standard_potential(0.0));
  Spectrum sp = smallest(sys, 2, 1e-9);
  CHECK(std::abs(sp.eigenvalues[0]) < 1e-6);  // zero mode
  CHECK(sp.eigenvalues[1] == doctest::Approx(kPi * kPi).epsilon(0.02));
}

TEST_CASE("disk spectrum matches the closed form at moderate resolution") {
  TriangleMesh m = generate(disk(1), 0.05);
  Spectrum fem = smallest(assemble_magnetic(m, standard_potential(1.0)), 10, 1e-9);
  Spectrum exact = disk_spectrum(1.0, 1.0, 10);
  for (int j = 0; j < 10; ++j) {
    CHECK(std::abs(fem.eigenvalues[j] - exact.eigenvalues[j]) /
              exact.eigenvalues[j] <
          0.01);
  }
}

TEST_CASE("neumann_lambda2") {
  TriangleMesh sq = generate(rect(1, 1), 0.05);
  CHECK(neumann_lambda2(sq) == doctest::Approx(kPi * kPi).epsilon(0.02));

  TriangleMesh dm = generate(disk(1), 0.05);
  double jp = oracles::bessel_jprime_zero(1, 1.0, 3.0);
  CHECK(neumann_lambda2(dm) == doctest::Approx(jp * jp).epsilon(0.02));

  // exact scaling under mesh dilation
  TriangleMesh scaled = dm;
  for (Vec2& p : scaled.nodes) p *= 2.0;
  scaled.domain = disk(2.0);
  CHECK(neumann_lambda2(scaled) ==
        doctest::Approx(neumann_lambda2(dm) / 4.0).epsilon(1e-8));
}

TEST_CASE("shift consistency") {
  TriangleMesh m = generate(disk(1), 0.1);
  HermitianSystem sys = assemble_magnetic(m, standard_potential(1.0));
  Spectrum base = smallest(sys, 3, 1e-11);
  for (double sigma : {1.0, 10.0}) {
    HermitianSystem shifted = sys;
    shifted.K = sys.K + Eigen::SparseMatrix<std::complex<double>>(
                            sigma * sys.M.cast<std::complex<double>>());
    Spectrum sp = smallest(shifted, 3, 1e-11);
    for (int j = 0; j < 3; ++j)
      CHECK(sp.eigenvalues[j] ==
            doctest::Approx(base.eigenvalues[j] + sigma).epsilon(1e-10));
  }
}

TEST_CASE("monotone error decay over the disk refinement sequence") {
  Spectrum exact = disk_spectrum(1.0, 1.0, 5);
  double prev[5];
  bool first = true;
  for (double h : {0.2, 0.1, 0.05}) {
    TriangleMesh m = generate(disk(1), h);
    Spectrum sp = smallest(assemble_magnetic(m, standard_potential(1.0)), 5, 1e-10);
    for (int j = 0; j < 5; ++j) {
      double err = std::abs(sp.eigenvalues[j] - exact.eigenvalues[j]);
      if (!first) CHECK(err < prev[j]);
      prev[j] = err;
    }
    first = false;
  }
}

TEST_CASE("residual certificates hold post hoc") {
  TriangleMesh m = generate(disk(1), 0.08);
  HermitianSystem sys = assemble_magnetic(m, standard_potential(1.0));
  Spectrum sp = smallest(sys, 4, 1e-9);
  auto res = recompute_residuals(sys, sp);
  for (double r : res) CHECK(r <= 1e-9 * 1.0001);
}

TEST_CASE("non-convergence carries the best residuals") {
  TriangleMesh m = generate(disk(1), 0.1);
  HermitianSystem sys = assemble_magnetic(m, standard_potential(1.0));
  EigOptions opt;
  opt.max_iter = 1;
  bool threw = false;
  try {
    smallest(sys, 5, 1e-14, opt);
  } catch (const SolverError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("residuals:") != std::string::npos);
  }
  CHECK(threw);
  CHECK_THROWS_AS(smallest(sys, 2, -1.0), ValidationError);
}

TEST_CASE("fixed seed gives bitwise identical results") {
  TriangleMesh m = generate(disk(1), 0.1);
  HermitianSystem sys = assemble_magnetic(m, standard_potential(1.0));
  Spectrum a = smallest(sys, 3, 1e-10);
  Spectrum b = smallest(sys, 3, 1e-10);
  for (int j = 0; j < 3; ++j) CHECK(a.eigenvalues[j] == b.eigenvalues[j]);
}
