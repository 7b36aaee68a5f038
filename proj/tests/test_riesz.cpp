#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "magspec/closedform.hpp"
#include "magspec/riesz.hpp"

using namespace magspec;

TEST_CASE("fluctuation function") {
  CHECK(fluctuation(0.5) == 0.0);
  CHECK(fluctuation(3.0) == -0.5);
  CHECK(fluctuation(-2.0) == -0.5);
  CHECK(fluctuation(1.25) == -0.25);
}

TEST_CASE("empirical Riesz mean") {
  Spectrum sp;
  sp.eigenvalues = {1.0, 2.0, 4.0};
  sp.residuals = {0, 0, 0};
  sp.k = 3;
  CHECK(R1_empirical(sp, 0.0).first == 0.0);
  CHECK(R1_empirical(sp, 1.0).first == 0.0);
  double z = 3.0;  // between lambda_2 and lambda_3
  auto [v, valid] = R1_empirical(sp, z);
  CHECK(v == doctest::Approx((z - 1.0) + (z - 2.0)));
  CHECK(valid);
  CHECK_FALSE(R1_empirical(sp, 5.0).second);
}

TEST_CASE("Riesz lower bound special values") {
  double area = 3.7, beta = 1.3;
  CHECK(R1_lower(0.0, beta, area) == 0.0);
  CHECK(R1_lower(beta, beta, area) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(R1_lower(2 * beta, beta, area) ==
        doctest::Approx(area * beta * beta / (2 * kPi)).epsilon(1e-13));
}

TEST_CASE("remainder function") {
  CHECK(remainder_R(0.5, 1.0) == doctest::Approx(0.5));
  CHECK(remainder_R(1.0, 1.0) == 0.0);
  CHECK(remainder_R(3.0, 2.5) == 0.0);
  CHECK(remainder_R(1.5, 1.0) == doctest::Approx(1.0 / 6.0));
  // R(X) = beta (1 - X) on [0, 1] and X R(X) / beta <= 1/4 everywhere
  for (int i = 0; i <= 40; ++i) {
    double X = i / 40.0;
    CHECK(remainder_R(X, 2.0) == doctest::Approx(2.0 * (1 - X)).epsilon(1e-12));
  }
  for (int i = 1; i <= 400; ++i) {
    double X = i * 0.025;
    CHECK(remainder_R(X, 1.0) * X <= 0.25 + 1e-12);
    CHECK(remainder_R(X, 1.0) >= 0.0);
  }
}

TEST_CASE("average upper bound") {
  double area = 6 * kPi;  // beta |Omega| / 2 pi = 3 at beta = 1
  CHECK(avg_upper(3, 1.0, area) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(avg_upper(2, 1.0, area) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(avg_upper(6, 1.0, area) == doctest::Approx(2.0).epsilon(1e-13));
  // never exceeds beta while k <= beta area / 2 pi
  for (int k = 1; k <= 3; ++k) CHECK(avg_upper(k, 1.0, area) <= 1.0 + 1e-12);
}

TEST_CASE("single eigenvalue upper bound") {
  CHECK(single_upper(0, 1.0, 2 * kPi) == doctest::Approx(1.0));
  CHECK(single_upper(3, 1.0, 2 * kPi) == doctest::Approx(13.0));
}

TEST_CASE("heat trace lower bound") {
  CHECK(heat_lower(1.0, 1.0, kPi) == doctest::Approx(0.25 / std::sinh(1.0)).epsilon(1e-13));
  CHECK(heat_lower(50.0, 1.0, kPi) < 1e-18);
  // beta -> 0 recovers the classical leading term area / (4 pi t)
  CHECK(heat_lower(1.0, 1e-9, kPi) == doctest::Approx(kPi / (4 * kPi)).epsilon(1e-6));
}

TEST_CASE("spectrum verification on the disk B_4") {
  Spectrum sp = disk_spectrum(4.0, 1.0, 20);
  RieszReport rep = verify_spectrum(sp, 1.0, 16 * kPi, 15);
  CHECK(rep.riesz_ok);
  CHECK(rep.averages_ok);
  CHECK(rep.singles_ok);
  CHECK(rep.z_grid.size() == rep.r1_empirical.size());

  Spectrum empty;
  RieszReport er = verify_spectrum(empty, 1.0, kPi, 5);
  CHECK(er.z_grid.empty());

  // negative control: a fabricated inflated spectrum breaks the average
  // bound (the semiclassical margins at this scale absorb ~35%, so use 50%)
  Spectrum bad = sp;
  for (double& v : bad.eigenvalues) v *= 1.50;
  RieszReport br = verify_spectrum(bad, 1.0, 16 * kPi, 15);
  bool both_ok = br.averages_ok && br.riesz_ok;
  CHECK_FALSE(both_ok);
}

TEST_CASE("Legendre duality spot check at integer w") {
  // sums0: sum of the first k eigenvalues is below the transform of the
  // Landau-side counting function
  Spectrum sp = disk_spectrum(4.0, 1.0, 25);
  double area = 16 * kPi, beta = 1.0;
  double run = 0;
  for (int k = 1; k <= 20; ++k) {
    run += sp.eigenvalues[k - 1];
    double X = 2 * kPi * k / (beta * area);
    double flX = std::floor(X);
    double rhs = beta * beta * area / (2 * kPi) *
                 ((2 * flX + 1) * (X - flX) + flX * flX);
    CHECK(run <= rhs + 1e-9);
  }
}

TEST_CASE("implicit single-eigenvalue inequality with computed values") {
  Spectrum sp = disk_spectrum(2.0, 1.0, 12);
  double area = 4 * kPi, beta = 1.0;
  for (int k = 0; k + 1 < 12; ++k) {
    double lam = sp.eigenvalues[k];  // lambda_{k+1}
    double psi = fluctuation(lam / (2 * beta) + 0.5);
    double rhs = 4 * kPi / area *
                 (k + std::sqrt(k * k + beta * beta * area * area /
                                            (4 * kPi * kPi) * psi * psi));
    CHECK(lam <= rhs + 1e-9);
  }
}
