// Test-side oracles, kept independent of the library implementation paths
// they are used to check.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "magspec/common.hpp"

namespace oracles {

// Composite Simpson with Richardson refinement until |I(2n) - I(n)| <= tol.
inline double quadrature(const std::function<double(double)>& f, double a,
                         double b, double tol) {
  auto simpson = [&](int n) {
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3;
  };
  int n = 64;
  double prev = simpson(n);
  for (int it = 0; it < 16; ++it) {
    n *= 2;
    double cur = simpson(n);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  return prev;
}

// First positive zero of d/dx J_nu(x), bisected from a bracket.
inline double bessel_jprime_zero(int nu, double lo, double hi) {
  auto f = [&](double x) {
    return 0.5 * (std::cyl_bessel_j(nu > 0 ? nu - 1 : 1, x) -
                  std::cyl_bessel_j(nu + 1, x)) *
           (nu > 0 ? 1.0 : -1.0);
  };
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (flo * fm <= 0)
      hi = mid;
    else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Torsion function maximum of the unit square (series solution at the center).
inline double square_torsion_max() {
  double s = 0;
  for (int k = 1; k < 4000; k += 2) {
    double c = 4.0 / std::pow(k * magspec::kPi, 3);
    double sech = 1.0 / std::cosh(k * magspec::kPi / 2);
    double sign = ((k - 1) / 2) % 2 ? -1.0 : 1.0;
    s += c * (1 - sech) * sign;
  }
  return s;
}

// Sign-accurate v'(R) for the radial disk problem by direct RK4 integration
// of -v'' - v'/r + ((beta r/2) - n/r)^2 v = lambda v from a series start.
inline double radial_vprime_sign(int n, double beta, double R, double lambda) {
  int alpha = std::abs(n);
  double r0 = std::min(1e-4, 1e-4 * R);
  double c2 = (-beta * n - lambda) / (4.0 * alpha + 4.0);
  double v = std::pow(r0, alpha) * (1 + c2 * r0 * r0);
  double w = alpha * std::pow(r0, alpha > 0 ? alpha - 1 : 0) * (1 + c2 * r0 * r0) +
             2 * c2 * std::pow(r0, alpha + 1);
  if (alpha == 0) w = 2 * c2 * r0;
  int steps = 20000;
  double h = (R - r0) / steps;
  double r = r0;
  for (int i = 0; i < steps; ++i) {
    auto acc = [&](double rr, double vv, double ww) {
      double t = beta * rr / 2 - n / rr;
      return -ww / rr + (t * t - lambda) * vv;
    };
    double k1v = w, k1w = acc(r, v, w);
    double k2v = w + h / 2 * k1w, k2w = acc(r + h / 2, v + h / 2 * k1v, w + h / 2 * k1w);
    double k3v = w + h / 2 * k2w, k3w = acc(r + h / 2, v + h / 2 * k2v, w + h / 2 * k2w);
    double k4v = w + h * k3w, k4w = acc(r + h, v + h * k3v, w + h * k3w);
    v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    w += h / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
    r += h;
    double m = std::abs(v) + std::abs(w);
    if (m > 1e100) {
      v /= m;
      w /= m;
    }
  }
  return w;
}

// Area of the one-sided inner parallel set of an ellipse by dense polygonal
// offset: sample the ellipse, offset each sample inward along the normal,
// and take the shoelace difference.
inline double ellipse_tube_area_polygonal(double a, double b, double h, int n) {
  auto shoelace = [](const std::vector<magspec::Vec2>& p) {
    double s = 0;
    for (size_t i = 0; i < p.size(); ++i) {
      const auto& u = p[i];
      const auto& v = p[(i + 1) % p.size()];
      s += u.x() * v.y() - v.x() * u.y();
    }
    return 0.5 * s;
  };
  std::vector<magspec::Vec2> outer(n), inner(n);
  for (int i = 0; i < n; ++i) {
    double t = 2 * magspec::kPi * i / n;
    magspec::Vec2 p(a * std::cos(t), b * std::sin(t));
    magspec::Vec2 tang(-a * std::sin(t), b * std::cos(t));
    tang.normalize();
    magspec::Vec2 nrm(tang.y(), -tang.x());  // outward for CCW
    outer[i] = p;
    inner[i] = p - h * nrm;
  }
  return shoelace(outer) - shoelace(inner);
}

}  // namespace oracles
