#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "magspec/accept.hpp"
#include "magspec/bounds.hpp"
#include "magspec/io.hpp"
#include "magspec/riesz.hpp"

namespace magspec {

namespace {

using Clock = std::chrono::steady_clock;

struct SuiteEntry {
  DomainSpec spec;
  double mesh_h;
  double fem_lambda1 = 0;
  double fem_residual = 0;
  bool computed = false;
};

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

class Runner {
 public:
  Runner(const AcceptOptions& opt, std::ostream* live) : opt_(opt), live_(live) {
    suite_.push_back({disk(0.5), 0.02});
    suite_.push_back({disk(1.0), 0.035});
    suite_.push_back({disk(2.0), 0.06});
    suite_.push_back({disk(4.0), 0.12});
    suite_.push_back({disk(6.0), 0.18});
    suite_.push_back({rect(1, 1), 0.025});
    suite_.push_back({rect(2, 1), 0.03});
    {
      DomainSpec a;
      a.kind = DomainKind::annulus;
      a.r_in = 1;
      a.r_out = 2;
      suite_.push_back({a, 0.05});
    }
    suite_.push_back({rect(4, 0.1), 0.02});
  }

  std::vector<CriterionResult> run() {
    criterion(1, "de Gennes constant", [&](std::string& d) { return c1(d); });
    criterion(2, "closed-form/FEM equivalence on the unit disk",
              [&](std::string& d) { return c2(d); }, true);
    criterion(3, "flux-integer disks contain beta with n values below",
              [&](std::string& d) { return c3(d); });
    criterion(4, "strict upper bound lambda_1 < beta on the suite",
              [&](std::string& d) { return c4(d); }, true);
    criterion(5, "bound sandwich against FEM lambda_1",
              [&](std::string& d) { return c5(d); }, true);
    criterion(6, "Riesz means and eigenvalue averages",
              [&](std::string& d) { return c6(d); });
    criterion(7, "small-radius asymptote beta^2 R^2 / 8",
              [&](std::string& d) { return c7(d); });
    criterion(8, "tube limits around ellipse and flux-integer circle",
              [&](std::string& d) { return c8(d); }, true);
    criterion(9, "homothety exactness of the closed forms",
              [&](std::string& d) { return c9(d); });
    criterion(10, "Dirichlet comparison on disks",
              [&](std::string& d) { return c10(d); }, true);
    criterion(11, "beta symmetry and byte determinism",
              [&](std::string& d) { return c11(d); }, true);
    return results_;
  }

 private:
  AcceptOptions opt_;
  std::ostream* live_;
  std::vector<SuiteEntry> suite_;
  std::vector<CriterionResult> results_;

  void criterion(int idx, const std::string& name,
                 const std::function<bool(std::string&)>& body,
                 bool needs_fem = false) {
    CriterionResult r{idx, name, false, false, "", 0};
    if (needs_fem && opt_.fast) {
      r.skipped = true;
      r.pass = true;
      r.detail = "skipped (--fast: closed-form subset)";
    } else {
      auto t0 = Clock::now();
      try {
        r.pass = body(r.detail);
      } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
      }
      r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    }
    if (live_) {
      *live_ << (r.pass ? "PASS" : "FAIL") << " criterion " << idx << ": " << name;
      if (!r.detail.empty()) *live_ << " [" << r.detail << "]";
      char buf[32];
      std::snprintf(buf, sizeof buf, " (%.1fs)", r.seconds);
      *live_ << buf << "\n" << std::flush;
    }
    results_.push_back(r);
  }

  const SuiteEntry& fem_suite(size_t i) {
    SuiteEntry& e = suite_[i];
    if (!e.computed) {
      TriangleMesh mesh = generate(e.spec, e.mesh_h);
      HermitianSystem sys = assemble_magnetic(mesh, standard_potential(1.0));
      Spectrum sp = smallest(sys, 1, 1e-9);
      e.fem_lambda1 = sp.eigenvalues[0];
      e.fem_residual = sp.residuals[0];
      e.computed = true;
    }
    return e;
  }

  // -- criterion bodies ------------------------------------------------------

  bool c1(std::string& detail) {
    auto t0 = Clock::now();
    DeGennesResult r = theta0(1e-5);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::ostringstream os;
    os << "Theta0=" << r.theta0 << " xi0=" << r.xi0;
    detail = os.str();
    return std::abs(r.theta0 - 0.590106) <= 5e-4 &&
           std::abs(r.theta0 - r.xi0 * r.xi0) <= 1e-4 && secs < 10.0;
  }

  bool c2(std::string& detail) {
    Spectrum exact = disk_spectrum(1.0, 1.0, 10);
    TriangleMesh mesh = generate(disk(1.0), 0.0185);  // ~1e4 DOF
    HermitianSystem sys = assemble_magnetic(mesh, standard_potential(1.0));
    Spectrum coarse = smallest(sys, 10, 1e-9);
    TriangleMesh fine_mesh = refine(mesh);
    HermitianSystem sys2 = assemble_magnetic(fine_mesh, standard_potential(1.0));
    Spectrum fine = smallest(sys2, 10, 1e-9);

    double worst_rel = 0, worst_ratio = 1e300;
    for (int j = 0; j < 10; ++j) {
      double ex = exact.eigenvalues[j];
      double d1 = std::abs(coarse.eigenvalues[j] - ex);
      double d2 = std::abs(fine.eigenvalues[j] - ex);
      worst_rel = std::max(worst_rel, d1 / ex);
      worst_ratio = std::min(worst_ratio, d1 / std::max(d2, 1e-300));
    }
    std::ostringstream os;
    os << "n=" << sys.n << " max rel err=" << worst_rel
       << " min refinement ratio=" << worst_ratio;
    detail = os.str();
    return worst_rel <= 0.01 && worst_ratio >= 2.5;
  }

  Spectrum inflate(Spectrum sp) const {
    for (double& v : sp.eigenvalues) v *= (1.0 + opt_.perturb);
    return sp;
  }

  bool c3(std::string& detail) {
    bool ok = true;
    std::ostringstream os;
    for (int n = 1; n <= 3; ++n) {
      double R = std::sqrt(2.0 * n);
      Spectrum sp = inflate(disk_spectrum(R, 1.0, n + 3));
      bool has_beta = false;
      int below = 0;
      for (double v : sp.eigenvalues) {
        if (std::abs(v - 1.0) <= 1e-8) has_beta = true;
        if (v < 1.0 - 1e-9) ++below;
      }
      ok = ok && has_beta && below >= n;
      os << "R=sqrt(" << 2 * n << "): contains-beta=" << has_beta
         << " below=" << below << "; ";
    }
    detail = os.str();
    return ok;
  }

  bool c4(std::string& detail) {
    bool ok = true;
    double worst = 1e300;
    for (size_t i = 0; i < suite_.size(); ++i) {
      const SuiteEntry& e = fem_suite(i);
      double margin = 1.0 - e.fem_lambda1;
      worst = std::min(worst, margin);
      if (!(e.fem_lambda1 < 1.0 - 10 * e.fem_residual)) ok = false;
    }
    std::ostringstream os;
    os << "min margin beta - lambda_1 = " << worst;
    detail = os.str();
    return ok;
  }

  bool c5(std::string& detail) {
    bool ok = true;
    double worst_up = 1e300, worst_lo = 1e300;
    for (size_t i = 0; i < suite_.size(); ++i) {
      const SuiteEntry& e = fem_suite(i);
      GeometricSummary g = summarize(e.spec);
      double lam = e.fem_lambda1, res = e.fem_residual;
      std::vector<Bound> ups;
      ups.push_back(ub_circumradius(g.circumradius, 1.0));
      ups.push_back(ub_width(g.width, 1.0));
      if (g.simply_connected) {
        ups.push_back(ub_simply_connected_area(g.area, 1.0, true));
        ups.push_back(ub_fh2(g.area, 1.0, true));
        TriangleMesh mesh = generate(e.spec, e.mesh_h);
        TorsionField phi =
            solve_torsion(mesh, [](const Vec2&) { return 1.0; });
        ups.push_back(ub_variable_sup(1.0));
        ups.push_back(ub_variable(1.0, phi.phi_star));
        ups.push_back(ub_variable_integral(
            mesh, [](const Vec2&) { return 1.0; }, phi));
      }
      for (const Bound& b : ups) {
        worst_up = std::min(worst_up, b.value - lam);
        if (!(b.value >= lam - res)) ok = false;
      }
      if (g.simply_connected) {
        TriangleMesh mesh = generate(e.spec, e.mesh_h);
        double l2n = neumann_lambda2(mesh);
        Bound lo = lb_kovarik(g.area, g.inradius, l2n, 1.0, true);
        worst_lo = std::min(worst_lo, lam - lo.value);
        if (!(lo.value <= lam + res)) ok = false;
      }
    }
    std::ostringstream os;
    os << "min upper margin=" << worst_up << " min lower margin=" << worst_lo;
    detail = os.str();
    return ok;
  }

  bool c6(std::string& detail) {
    Spectrum b4 = inflate(disk_spectrum(4.0, 1.0, 40));
    const double area = 16 * kPi;
    double z_hi = b4.eigenvalues[29];
    bool ok = true;
    double min_margin = 1e300;
    for (int i = 0; i < 200; ++i) {
      double z = z_hi * (i + 1) / 200.0;
      auto [emp, valid] = R1_empirical(b4, z);
      double low = R1_lower(z, 1.0, area);
      min_margin = std::min(min_margin, emp - low);
      if (valid && emp < low - 1e-9 * std::max(1.0, z * z * area)) ok = false;
    }
    double run = 0;
    for (int k = 1; k <= 30; ++k) {
      run += b4.eigenvalues[k - 1];
      if (run / k > avg_upper(k, 1.0, area) + 1e-12) ok = false;
    }
    Spectrum b6 = inflate(disk_spectrum(std::sqrt(6.0), 1.0, 3));
    double run6 = 0;
    for (int k = 1; k <= 3; ++k) {
      run6 += b6.eigenvalues[k - 1];
      if (run6 / k > 1.0 + 1e-12) ok = false;
    }
    std::ostringstream os;
    os << "min R1 margin=" << min_margin;
    detail = os.str();
    return ok;
  }

  bool c7(std::string& detail) {
    auto pts = disk_branch_eigens(0, 1.0, 0.1, 0.5);
    if (pts.empty()) {
      detail = "no branch root found";
      return false;
    }
    double lam = pts.front().lambda * (1.0 + opt_.perturb);
    double ratio = lam * 8.0 / (0.1 * 0.1);
    std::ostringstream os;
    os << "lambda_1=" << lam << " 8 lambda/R^2=" << ratio;
    detail = os.str();
    return std::abs(ratio - 1.0) <= 0.05;
  }

  bool c8(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    // ellipse tube: approach to the curve eigenvalue from the tube bound side
    CurveSpec ell;
    ell.kind = CurveKind::ellipse;
    ell.a = 1.0;
    ell.b = 0.5;
    CurveInvariants inv = curve_invariants(ell);
    double lamG = curve_lambda1(inv.length, inv.enclosed_area, 1.0);
    double prev_gap = 1e300;
    for (double h : {0.2, 0.1, 0.05}) {
      TriangleMesh mesh = generate(tube_domain(ell, h), h / 4);
      HermitianSystem sys = assemble_magnetic(mesh, standard_potential(1.0));
      Spectrum sp = smallest(sys, 1, 1e-9);
      double lam = sp.eigenvalues[0];
      double gap = std::abs(lam - lamG);
      if (!(gap < prev_gap)) ok = false;
      if (!(lam >= lamG - std::sqrt(1.0) * h - 10 * sp.residuals[0])) ok = false;
      prev_gap = gap;
      os << "ellipse h=" << h << " lam=" << lam << " gap=" << gap << "; ";
    }
    os << "lamGamma=" << lamG << "; ";
    // flux-integer circle: eigenvalue collapse
    CurveSpec circ;
    circ.kind = CurveKind::circle;
    circ.R = std::sqrt(2.0);
    std::vector<double> lams;
    for (double h : {0.2, 0.1, 0.05}) {
      TriangleMesh mesh = generate(tube_domain(circ, h), h / 4);
      HermitianSystem sys = assemble_magnetic(mesh, standard_potential(1.0));
      Spectrum sp = smallest(sys, 1, 1e-9);
      lams.push_back(sp.eigenvalues[0]);
      os << "circle h=" << h << " lam=" << sp.eigenvalues[0] << "; ";
    }
    if (!(lams[1] < lams[0] && lams[2] < lams[1])) ok = false;
    if (!(lams[2] < lams[0] / 2)) ok = false;
    detail = os.str();
    return ok;
  }

  bool c9(std::string& detail) {
    bool ok = true;
    double worst = 0;
    for (double alpha : {0.5, 2.0}) {
      Spectrum base = disk_spectrum(1.0, 1.0, 6);
      Spectrum scaled = disk_spectrum(alpha * 1.0, 1.0 / (alpha * alpha), 6);
      for (int j = 0; j < 6; ++j) {
        double lhs = base.eigenvalues[j];
        double rhs = alpha * alpha * scaled.eigenvalues[j];
        double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        worst = std::max(worst, rel);
        if (rel > 1e-8) ok = false;
      }
      Spectrum cb = circle_spectrum(2 * kPi, kPi, 1.3, 6);
      Spectrum cs = circle_spectrum(alpha * 2 * kPi, alpha * alpha * kPi,
                                    1.3 / (alpha * alpha), 6);
      for (int j = 0; j < 6; ++j) {
        double lhs = cb.eigenvalues[j];
        double rhs = alpha * alpha * cs.eigenvalues[j];
        double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        worst = std::max(worst, rel);
        if (rel > 1e-8) ok = false;
      }
    }
    std::ostringstream os;
    os << "max homothety defect=" << worst;
    detail = os.str();
    return ok;
  }

  bool c10(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    double prev = 1e300;
    for (double R : {0.5, 1.0, 2.0, 4.0}) {
      TriangleMesh mesh = generate(disk(R), 0.03 * std::max(R, 1.0));
      HermitianSystem dsys = assemble_dirichlet(mesh, standard_potential(1.0));
      Spectrum dsp = smallest(dsys, 1, 1e-9);
      double lamD = dsp.eigenvalues[0];
      double lamN = disk_spectrum(R, 1.0, 1).eigenvalues[0];
      os << "R=" << R << " D=" << lamD << " N=" << lamN << "; ";
      if (!(lamD > 1.0)) ok = false;
      if (!(lamD < prev)) ok = false;
      if (!(lamN < lamD)) ok = false;
      prev = lamD;
    }
    detail = os.str();
    return ok;
  }

  bool c11(std::string& detail) {
    TriangleMesh mesh = generate(disk(1.0), 0.06);
    Spectrum plus =
        smallest(assemble_magnetic(mesh, standard_potential(1.0)), 3, 1e-10);
    Spectrum minus =
        smallest(assemble_magnetic(mesh, standard_potential(-1.0)), 3, 1e-10);
    bool ok = true;
    double worst = 0;
    for (int j = 0; j < 3; ++j) {
      double d = std::abs(plus.eigenvalues[j] - minus.eigenvalues[j]) /
                 plus.eigenvalues[j];
      worst = std::max(worst, d);
      if (d > 1e-7) ok = false;
    }
    // byte determinism of the CSV output across repeated runs
    std::ostringstream a, b;
    plus.domain_id = "disk:R=1";
    plus.beta = 1.0;
    write_spectrum_csv(a, plus, config_hash("determinism-check"));
    Spectrum again =
        smallest(assemble_magnetic(mesh, standard_potential(1.0)), 3, 1e-10);
    again.domain_id = "disk:R=1";
    again.beta = 1.0;
    write_spectrum_csv(b, again, config_hash("determinism-check"));
    if (a.str() != b.str()) ok = false;
    std::ostringstream os;
    os << "max beta-symmetry defect=" << worst
       << " byte-identical=" << (a.str() == b.str());
    detail = os.str();
    return ok;
  }
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptOptions& opt,
                                            std::ostream* live) {
  Runner r(opt, live);
  return r.run();
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace magspec
