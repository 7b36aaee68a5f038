// The OpenMP kernels must reproduce the serial reference bit for bit.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "magspec/closedform.hpp"
#include "magspec/fem.hpp"

using namespace magspec;

namespace {

DomainSpec disk(double R) {
  DomainSpec d;
  d.kind = DomainKind::disk;
  d.R = R;
  return d;
}

bool identical(const Eigen::SparseMatrix<std::complex<double>>& a,
               const Eigen::SparseMatrix<std::complex<double>>& b) {
  if (a.nonZeros() != b.nonZeros()) return false;
  for (int c = 0; c < a.outerSize(); ++c) {
    Eigen::SparseMatrix<std::complex<double>>::InnerIterator ia(a, c), ib(b, c);
    for (; ia && ib; ++ia, ++ib) {
      if (ia.row() != ib.row()) return false;
      if (ia.value() != ib.value()) return false;
    }
    if (ia || ib) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("assembly is bit-identical across execution modes") {
  TriangleMesh m = generate(disk(1), 0.04);
  PotentialField A = standard_potential(1.0);
  HermitianSystem s = assemble_magnetic(m, A, ExecMode::serial);
  HermitianSystem p = assemble_magnetic(m, A, ExecMode::parallel);
  CHECK(identical(s.K, p.K));
  CHECK((s.M - p.M).norm() == 0.0);
}

TEST_CASE("assembly is bit-identical across thread counts") {
  TriangleMesh m = generate(disk(1), 0.06);
  PotentialField A = standard_potential(1.0);
  setenv("MAGSPEC_THREADS", "1", 1);
  HermitianSystem one = assemble_magnetic(m, A, ExecMode::parallel);
  unsetenv("MAGSPEC_THREADS");
  HermitianSystem many = assemble_magnetic(m, A, ExecMode::parallel);
  CHECK(identical(one.K, many.K));
}

TEST_CASE("branch scans are bit-identical across execution modes") {
  Spectrum s = disk_spectrum(4.0, 1.0, 25, ExecMode::serial);
  Spectrum p = disk_spectrum(4.0, 1.0, 25, ExecMode::parallel);
  REQUIRE(s.eigenvalues.size() == p.eigenvalues.size());
  for (size_t i = 0; i < s.eigenvalues.size(); ++i)
    CHECK(s.eigenvalues[i] == p.eigenvalues[i]);
}
