#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "magspec/closedform.hpp"

namespace magspec {

namespace {

// ------------------------------------------------------------ Kummer series

struct SeriesVal {
  double value;
  double abs_sum;  // sum of |terms|, for scale-aware normalization
};

// M(a, b, y) by the confluent hypergeometric series with term-ratio stopping.
SeriesVal kummer(double a, double b, double y) {
  double term = 1.0, sum = 1.0, abs_sum = 1.0;
  for (int k = 0; k < 20000; ++k) {
    term *= (a + k) * y / ((b + k) * (k + 1));
    sum += term;
    abs_sum += std::abs(term);
    if (std::abs(term) <= 1e-16 * abs_sum && k > y) break;
  }
  return {sum, abs_sum};
}

// Radial ODE fallback: integrate
//   -v'' - v'/r + ((beta r / 2) - n/r)^2 v = lambda v
// from a series start near r = 0, tracking only the sign-accurate scale.
double branch_function_ode(int n, double beta, double R, double lambda) {
  const int alpha = std::abs(n);
  const double r0 = std::min(1e-3, 1e-3 * R);
  const double c2 = (-beta * n - lambda) / (4.0 * alpha + 4.0);
  double v = std::pow(r0, alpha) * (1 + c2 * r0 * r0);
  double w = alpha * std::pow(r0, std::max(alpha - 1, 0)) * (1 + c2 * r0 * r0) +
             std::pow(r0, alpha) * 2 * c2 * r0;
  if (alpha == 0) w = 2 * c2 * r0;

  auto q = [&](double r) {
    double t = beta * r / 2 - n / r;
    return t * t - lambda;
  };
  int steps = std::max(4000, static_cast<int>(400 * R * std::sqrt(std::max(lambda, beta))));
  double h = (R - r0) / steps;
  double r = r0;
  for (int i = 0; i < steps; ++i) {
    auto f = [&](double rr, double vv, double ww, double& dv, double& dw) {
      dv = ww;
      dw = -ww / rr + q(rr) * vv;
    };
    double k1v, k1w, k2v, k2w, k3v, k3w, k4v, k4w;
    f(r, v, w, k1v, k1w);
    f(r + h / 2, v + h / 2 * k1v, w + h / 2 * k1w, k2v, k2w);
    f(r + h / 2, v + h / 2 * k2v, w + h / 2 * k2w, k3v, k3w);
    f(r + h, v + h * k3v, w + h * k3w, k4v, k4w);
    v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    w += h / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
    r += h;
    double mag = std::abs(v) + std::abs(w);
    if (mag > 1e100) {
      v *= 1e-100;
      w *= 1e-100;
    }
  }
  return w / std::max(std::abs(v) + std::abs(w), 1e-300);
}

// Bisect a sign change of f on [lo, hi] down to machine-level width.
template <class F>
double bisect(const F& f, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = f(mid);
    if (flo * fm <= 0)
      hi = mid;
    else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo < 1e-14 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> scan_roots(int n, double beta, double R, double lambda_max,
                               double step) {
  std::vector<double> roots;
  auto F = [&](double lam) { return branch_function(n, beta, R, lam); };
  double prev_lam = 0.0;
  double prev_f = F(prev_lam);
  for (double lam = step; lam <= lambda_max * (1 + 1e-12); lam += step) {
    double f = F(lam);
    if (prev_f * f < 0) {
      double root = bisect(F, prev_lam, lam, prev_f);
      // reject numerical sign flutter (no true crossing across the root)
      double delta = std::max(1e-9 * beta, 1e-12 * root);
      if (F(root - delta) * F(root + delta) < 0) roots.push_back(root);
    }
    prev_lam = lam;
    prev_f = f;
  }
  return roots;
}

}  // namespace

double branch_function(int n, double beta, double R, double lambda) {
  if (!(beta > 0) || !(R > 0))
    throw ValidationError("branch_function: requires beta > 0 and R > 0");
  const double y = beta * R * R / 2;
  const double gamma = (lambda / beta - 1) / 2;
  if (y > 50.0 || gamma > 30.0) return branch_function_ode(n, beta, R, lambda);

  const int alpha = std::abs(n);
  const double a = (1 + alpha - n) / 2.0 - lambda / (2 * beta);
  const double b = alpha + 1;
  SeriesVal m0 = kummer(a, b, y);
  SeriesVal m1 = kummer(a + 1, b + 1, y);
  double lead = static_cast<double>(alpha) - y;
  double f = lead * m0.value + 2 * y * (a / b) * m1.value;
  // positive normalization by the series scale: continuous in lambda and
  // sign-preserving, so roots and sign changes match the true v_n'(R)
  double norm = m0.abs_sum + m1.abs_sum;
  return f / norm;
}

std::vector<DiskBranchPoint> disk_branch_eigens(int n, double beta, double R,
                                                double lambda_max) {
  if (!(lambda_max > 0))
    throw ValidationError("disk_branch_eigens: lambda_max must be > 0");
  double step = beta / 20;
  std::vector<double> prev = scan_roots(n, beta, R, lambda_max, step);
  int tries = 0;
  for (;;) {
    std::vector<double> finer = scan_roots(n, beta, R, lambda_max, step / 2);
    if (finer.size() == prev.size()) {
      prev = std::move(finer);
      break;
    }
    if (++tries > 3)
      throw SolverError("disk_branch_eigens: root bracketing did not stabilize");
    step /= 2;
    prev = std::move(finer);
  }
  std::vector<DiskBranchPoint> out;
  int j = 1;
  for (double lam : prev) {
    double res = std::abs(branch_function(n, beta, R, lam));
    out.push_back({n, j++, lam, R, beta, res});
  }
  return out;
}

namespace {

std::vector<DiskBranchPoint> merge_disk_points(double R, double beta, int k,
                                               ExecMode mode) {
  if (k < 1) throw ValidationError("disk_spectrum: k must be >= 1");
  // rigorous cap from the single-eigenvalue bound lambda_k <= 8(k-1)/R^2 + beta
  const double cap = 8.0 * (k - 1) / (R * R) + beta * (1 + 1e-9) + 1e-12;
  std::vector<DiskBranchPoint> all;

  auto kth_candidate = [&]() {
    if (static_cast<int>(all.size()) < k) return cap;
    return all[k - 1].lambda;
  };
  auto insert_sorted = [&](std::vector<DiskBranchPoint> pts) {
    for (auto& p : pts) all.push_back(p);
    std::sort(all.begin(), all.end(), [](const DiskBranchPoint& x, const DiskBranchPoint& y) {
      if (x.lambda != y.lambda) return x.lambda < y.lambda;
      if (x.n != y.n) return x.n < y.n;
      return x.j < y.j;
    });
  };

  // scan one side of the n axis; branches are computed speculatively in
  // parallel blocks but consumed strictly in order (bit-identical to serial)
  auto scan_side = [&](int dir) {
    // on the positive side, never stop before the flux index beta R^2/2
    // where the branch minima dip lives
    const int flux_guard = dir > 0 ? static_cast<int>(std::ceil(beta * R * R / 2)) + 1 : 0;
    int misses = 0;
    int n = dir > 0 ? 0 : -1;
    // speculative parallel blocks only pay off once the per-branch lambda
    // grid is long enough; small scans keep the serial path (same results)
    const bool worth = cap / beta >= 4.0 || k >= 8;
    const int block = mode == ExecMode::parallel && worth
                          ? std::max(1, worker_count())
                          : 1;
    for (;;) {
      std::vector<std::vector<DiskBranchPoint>> results(block);
      if (block > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_count())
#endif
        for (int i = 0; i < block; ++i)
          results[i] = disk_branch_eigens(n + dir * i, beta, R, cap);
      } else {
        results[0] = disk_branch_eigens(n, beta, R, cap);
      }
      for (int i = 0; i < block; ++i) {
        int cur = n + dir * i;
        const auto& pts = results[i];
        double kth = kth_candidate();
        if (pts.empty() || pts.front().lambda > kth) {
          if (++misses >= 3 && !(dir > 0 && std::abs(cur) <= flux_guard)) {
            return;
          }
        } else {
          misses = 0;
        }
        if (!pts.empty()) insert_sorted(pts);
      }
      n += dir * block;
    }
  };
  scan_side(+1);
  scan_side(-1);

  if (static_cast<int>(all.size()) < k)
    throw SolverError("disk_spectrum: branch scan produced fewer than k values");
  all.resize(k);
  return all;
}

}  // namespace

std::vector<DiskBranchPoint> disk_spectrum_points(double R, double beta, int k,
                                                  ExecMode mode) {
  if (!(R > 0) || !(beta > 0))
    throw ValidationError("disk_spectrum: requires R > 0 and beta > 0");
  return merge_disk_points(R, beta, k, mode);
}

Spectrum disk_spectrum(double R, double beta, int k, ExecMode mode) {
  auto pts = disk_spectrum_points(R, beta, k, mode);
  Spectrum sp;
  sp.k = k;
  sp.beta = beta;
  sp.method = "closedform-disk";
  char buf[64];
  std::snprintf(buf, sizeof buf, "disk:R=%.6g", R);
  sp.domain_id = buf;
  for (const auto& p : pts) {
    sp.eigenvalues.push_back(p.lambda);
    sp.residuals.push_back(p.residual);
  }
  return sp;
}

Spectrum circle_spectrum(double L, double S, double beta, int count) {
  if (!(L > 0) || !(S > 0))
    throw ValidationError("circle_spectrum: requires L > 0 and S > 0");
  if (L * L < 4 * kPi * S * (1 - 1e-12))
    throw ValidationError("circle_spectrum: L^2 >= 4 pi S violated (not a curve)");
  if (count < 1) throw ValidationError("circle_spectrum: count must be >= 1");
  const double flux = beta * S / (2 * kPi);
  const double scale = 4 * kPi * kPi / (L * L);
  std::vector<double> vals;
  int n0 = static_cast<int>(std::floor(flux));
  for (int n = n0 - count - 1; n <= n0 + count + 1; ++n)
    vals.push_back(scale * (n - flux) * (n - flux));
  std::sort(vals.begin(), vals.end());
  vals.resize(count);
  Spectrum sp;
  sp.k = count;
  sp.beta = beta;
  sp.method = "closedform-circle";
  char buf[80];
  std::snprintf(buf, sizeof buf, "curve:L=%.6g,S=%.6g", L, S);
  sp.domain_id = buf;
  sp.eigenvalues = vals;
  sp.residuals.assign(vals.size(), 0.0);
  return sp;
}

double curve_lambda1(double L, double S, double beta) {
  return circle_spectrum(L, S, beta, 1).eigenvalues[0];
}

double landau_level(int l, double beta) {
  if (l < 0) throw ValidationError("landau_level: l must be >= 0");
  return beta * (2 * l + 1);
}

double landau_norm_sq(int n, int l, double beta) {
  if (n < 0 || l < 0 || !(beta > 0))
    throw ValidationError("landau_norm_sq: requires n,l >= 0 and beta > 0");
  double v = kPi * std::pow(2.0 / beta, n + 1);
  for (int i = l + 1; i <= l + n; ++i) v *= i;  // (l+n)!/l!
  return v;
}

double landau_sum_partial(int l, double y, int N) {
  if (y < 0) throw ValidationError("landau_sum_partial: y must be >= 0");
  // Laguerre polynomial L_l^n(y) via the finite sum
  auto laguerre = [&](int n, double yy) {
    double s = 0;
    for (int i = 0; i <= l; ++i) {
      double binom = 1.0;  // C(l+n, l-i)
      for (int t = 1; t <= l - i; ++t) binom *= static_cast<double>(n + i + t) / t;
      double term = binom * std::pow(yy, i);
      for (int t = 1; t <= i; ++t) term /= t;
      s += (i % 2 ? -term : term);
    }
    return s;
  };
  double sum = 0;
  for (int n = 0; n <= N; ++n) {
    double lg;
    if (y == 0.0) {
      lg = n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    } else {
      lg = -y + n * std::log(y);
    }
    lg += std::lgamma(l + 1.0) - std::lgamma(l + n + 1.0);
    double weight = std::isinf(lg) ? 0.0 : std::exp(lg);
    double L = laguerre(n, y);
    sum += weight * L * L;
  }
  return sum;
}

double rayleigh_ratio_G(int m, int n) {
  if (m < 0 || n < 1)
    throw ValidationError("rayleigh_ratio_G: requires m >= 0, n >= 1");
  auto factorial = [](int s) {
    double f = 1;
    for (int i = 2; i <= s; ++i) f *= i;
    return f;
  };
  // upper incomplete gamma at integer order: (s-1)! e^{-x} sum_{k<s} x^k/k!
  auto inc_gamma = [&](int s, double x) {
    double sum = 0, term = 1;
    for (int k = 0; k < s; ++k) {
      if (k > 0) term *= x / k;
      sum += term;
    }
    return factorial(s - 1) * std::exp(-x) * sum;
  };
  double x = static_cast<double>(n);
  double num = factorial(m) + 2.0 * m * inc_gamma(m + 1, x) - inc_gamma(m + 2, x);
  if (m > 0) num -= static_cast<double>(m) * m * inc_gamma(m, x);
  double den = factorial(m) - inc_gamma(m + 1, x);
  return num / den;
}

namespace {

// Count of eigenvalues below sigma for a symmetric tridiagonal matrix
// (Sturm sequence via the LDL^T recurrence).
int sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                double sigma) {
  int count = 0;
  double t = d[0] - sigma;
  if (t < 0) ++count;
  for (size_t i = 1; i < d.size(); ++i) {
    double denom = t;
    if (std::abs(denom) < 1e-300) denom = denom < 0 ? -1e-300 : 1e-300;
    t = d[i] - sigma - e[i - 1] * e[i - 1] / denom;
    if (t < 0) ++count;
  }
  return count;
}

double tridiag_smallest(const std::vector<double>& d, const std::vector<double>& e) {
  double hi = -1e300, lo = 1e300;
  for (size_t i = 0; i < d.size(); ++i) {
    double off = (i > 0 ? std::abs(e[i - 1]) : 0) + (i < e.size() ? std::abs(e[i]) : 0);
    hi = std::max(hi, d[i] + off);
    lo = std::min(lo, d[i] - off);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
    double mid = 0.5 * (lo + hi);
    if (sturm_count(d, e, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double mu1_grid(double xi, double T, int N) {
  // nodes t_i = i*dt, unknowns i = 0..N-1 (f_N = 0); Neumann at 0 by the
  // mirror trick, symmetrized: first off-diagonal scaled by sqrt(2).
  double dt = T / N;
  std::vector<double> d(N), e(N - 1);
  for (int i = 0; i < N; ++i) {
    double t = i * dt;
    d[i] = 2.0 / (dt * dt) + (xi + t) * (xi + t);
  }
  for (int i = 0; i < N - 1; ++i) e[i] = -1.0 / (dt * dt);
  e[0] *= std::sqrt(2.0);
  return tridiag_smallest(d, e);
}

}  // namespace

double mu1(double xi, double T, int N) {
  if (!(T >= 10 + std::abs(xi)))
    throw ValidationError("mu1: truncation length must satisfy T >= 10 + |xi|");
  if (N < 2000) throw ValidationError("mu1: grid must satisfy N >= 2000");
  double coarse = mu1_grid(xi, T, N);
  double fine = mu1_grid(xi, T, 2 * N);
  return (4 * fine - coarse) / 3;  // Richardson, O(dt^2) scheme
}

DeGennesResult theta0(double tol) {
  if (!(tol >= 1e-6)) throw ValidationError("theta0: tol must be >= 1e-6");
  const double T = 14.0;
  const int N = 3000;
  auto f = [&](double xi) { return mu1(xi, T, N); };

  double a = -3.0, b = 0.0;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-6) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double xi0 = 0.5 * (a + b);
  double th = f(xi0);
  if (xi0 < -3.0 + 1e-3 || xi0 > -1e-3)
    throw SolverError("theta0: minimizer landed on the bracket edge");
  if (std::abs(th - xi0 * xi0) > 10 * tol) {
    std::ostringstream msg;
    msg << "theta0: self-consistency |Theta0 - xi0^2| = "
        << std::abs(th - xi0 * xi0) << " exceeds " << 10 * tol;
    throw SolverError(msg.str());
  }
  return {th, xi0, T, N, tol};
}

}  // namespace magspec
