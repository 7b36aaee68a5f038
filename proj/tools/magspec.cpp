// Command-line driver: spectra, disk branches, bound reports, sweeps,
// figure data and the verification suite.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "magspec/accept.hpp"
#include "magspec/bounds.hpp"
#include "magspec/io.hpp"

namespace {

using namespace magspec;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
}

DomainSpec load_domain(const std::string& arg) {
  if (!arg.empty() && arg[0] != '{' && arg.find(':') == std::string::npos)
    return domain_from_json(read_file(arg));  // a file path
  return parse_domain(arg);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int cmd_spectrum(const std::string& domain_arg, double beta, double h, int k,
                 double tol, unsigned seed, const std::string& method,
                 const std::string& out) {
  DomainSpec spec = load_domain(domain_arg);
  std::ostringstream canon;
  canon << "spectrum|" << spec.id() << "|beta=" << fmt_g17(beta) << "|h="
        << fmt_g17(h) << "|k=" << k << "|tol=" << fmt_g17(tol)
        << "|seed=" << seed << "|method=" << method;
  uint64_t hash = config_hash(canon.str());

  Spectrum sp;
  if (method == "disk") {
    if (spec.kind != DomainKind::disk)
      throw ValidationError("method=disk requires a disk domain");
    sp = disk_spectrum(spec.R, beta, k);
  } else if (method == "circle") {
    CurveInvariants inv;
    if (spec.kind == DomainKind::disk) {
      CurveSpec c;
      c.kind = CurveKind::circle;
      c.R = spec.R;
      inv = curve_invariants(c);
    } else if (spec.kind == DomainKind::ellipse) {
      CurveSpec c;
      c.kind = CurveKind::ellipse;
      c.a = spec.a;
      c.b = spec.b;
      inv = curve_invariants(c);
    } else {
      throw ValidationError("method=circle requires a disk or ellipse domain");
    }
    sp = circle_spectrum(inv.length, inv.enclosed_area, beta, k);
  } else if (method == "fem") {
    TriangleMesh mesh = generate(spec, h);
    HermitianSystem sys = assemble_magnetic(mesh, standard_potential(beta));
    EigOptions opt;
    opt.tol = tol;
    opt.seed = seed;
    sp = smallest(sys, k, tol, opt);
    sp.mesh_h = mesh.h_max;
  } else {
    throw ValidationError("unknown method '" + method + "'");
  }
  sp.beta = beta;
  sp.domain_id = spec.id();

  std::ostringstream csv;
  write_spectrum_csv(csv, sp, hash);
  write_file(out, csv.str());
  if (!out.empty()) {
    nlohmann::json meta;
    meta["version"] = kVersion;
    char hb[24];
    std::snprintf(hb, sizeof hb, "%016llx", static_cast<unsigned long long>(hash));
    meta["config"] = hb;
    meta["domain"] = nlohmann::json::parse(domain_to_json(spec));
    meta["beta"] = beta;
    meta["h"] = h;
    meta["k"] = k;
    meta["tol"] = tol;
    meta["seed"] = seed;
    meta["method"] = method;
    write_file(out + ".meta.json", meta.dump(2) + "\n");
  }
  return 0;
}

int cmd_disk_branches(double rmin, double rmax, double rstep, int nmax,
                      double beta, double lmax, bool circle_mode,
                      const std::string& out) {
  if (!(rstep > 0) || !(rmax >= rmin) || !(rmin > 0))
    throw ValidationError("disk-branches: empty or invalid R grid");
  std::ostringstream canon;
  canon << "disk-branches|" << fmt_g17(rmin) << "|" << fmt_g17(rmax) << "|"
        << fmt_g17(rstep) << "|n=" << nmax << "|beta=" << fmt_g17(beta)
        << "|lmax=" << fmt_g17(lmax) << "|circle=" << circle_mode;
  uint64_t hash = config_hash(canon.str());

  std::vector<DiskBranchPoint> pts;
  for (double R = rmin; R <= rmax * (1 + 1e-12); R += rstep) {
    if (circle_mode) {
      double flux = beta * R * R / 2;
      int n0 = static_cast<int>(std::llround(flux));
      double lam = curve_lambda1(2 * kPi * R, kPi * R * R, beta);
      pts.push_back({n0, 1, lam, R, beta, 0.0});
    } else {
      for (int n = 0; n <= nmax; ++n) {
        auto roots = disk_branch_eigens(n, beta, R, lmax);
        for (const auto& p : roots) pts.push_back(p);
      }
    }
  }
  std::ostringstream csv;
  write_branch_csv(csv, pts, hash);
  write_file(out, csv.str());
  return 0;
}

int cmd_bounds(const std::string& domain_arg, double beta, double h, int k,
               const std::string& constants_file, const std::string& out) {
  DomainSpec spec = load_domain(domain_arg);
  std::ostringstream canon;
  canon << "bounds|" << spec.id() << "|beta=" << fmt_g17(beta)
        << "|h=" << fmt_g17(h) << "|k=" << k << "|constants=" << constants_file;
  uint64_t hash = config_hash(canon.str());

  BoundConstants constants = BoundConstants::defaults();
  if (!constants_file.empty()) {
    auto j = nlohmann::json::parse(read_file(constants_file));
    if (j.contains("C1")) {
      constants.C1 = j["C1"].get<double>();
      constants.C1_known = true;
    }
    if (j.contains("M")) constants.M = j["M"].get<double>();
    if (j.contains("Lambda")) constants.Lambda = j["Lambda"].get<double>();
  }
  constants.validate();

  GeometricSummary g = summarize(spec);
  TriangleMesh mesh = generate(spec, h);
  HermitianSystem sys = assemble_magnetic(mesh, standard_potential(beta));
  Spectrum sp = smallest(sys, std::max(1, k), 1e-9);
  sp.beta = beta;
  sp.domain_id = spec.id();

  // measure the covering multiplicity when a rolling radius is available
  if (g.rolling_radius_defined && g.rolling_radius > 0) {
    double eps = std::min(g.rolling_radius, 0.9 * g.inradius);
    try {
      EpsNet net = eps_net(spec, eps, 128);
      if (net.K_measured >= 1) constants.M = net.K_measured;
    } catch (const ValidationError&) {
      // keep the documented placeholder when no net fits
    }
  }

  std::vector<Bound> bounds;
  bounds.push_back(ub_universal(beta));
  bounds.push_back(ub_circumradius(g.circumradius, beta));
  bounds.push_back(ub_theta0_class(spec, beta));
  bounds.push_back(ub_width(g.width, beta));
  bounds.push_back(ub_simply_connected_area(g.area, beta, g.simply_connected));
  bounds.push_back(ub_fh2(g.area, beta, g.simply_connected));
  if (spec.flags.self_tiling_Lambda)
    bounds.push_back(ub_selftiling(*spec.flags.self_tiling_Lambda, beta));
  if (g.simply_connected) {
    TorsionField phi = solve_torsion(mesh, [&](const Vec2&) { return beta; });
    bounds.push_back(ub_variable_sup(beta));
    bounds.push_back(ub_variable(beta, phi.phi_star));
    bounds.push_back(
        ub_variable_integral(mesh, [&](const Vec2&) { return beta; }, phi));
    double l2n = neumann_lambda2(mesh);
    bounds.push_back(lb_kovarik(g.area, g.inradius, l2n, beta, true));
  } else {
    bounds.push_back(ub_simply_connected_area(g.area, beta, false));
  }
  bounds.push_back(lb_rolling(g.rolling_radius, beta, constants));
  if (spec.kind == DomainKind::tube) {
    CurveInvariants inv = curve_invariants(spec.curve);
    double lamG = curve_lambda1(inv.length, inv.enclosed_area, beta);
    double flux = beta * inv.enclosed_area / (2 * kPi);
    bool integer_flux = std::abs(flux - std::llround(flux)) < 1e-12;
    bounds.push_back(tube_lb(lamG, beta, spec.half_width, integer_flux));
  }

  std::vector<Verdict> verdicts;
  for (const Bound& b : bounds) {
    if (!b.hypotheses_ok) {
      verdicts.push_back({Verdict::Status::conditional, 0.0});
      continue;
    }
    verdicts.push_back(check(b, sp));
  }
  write_file(out, bounds_to_json(bounds, verdicts, constants,
                                 sp.eigenvalues[0], hash) +
                      "\n");
  return 0;
}

int cmd_verify(bool fast, double perturb) {
  AcceptOptions opt;
  opt.fast = fast;
  opt.perturb = perturb;
  auto results = run_acceptance(opt, &std::cout);
  return all_passed(results) ? 0 : 2;
}

int cmd_theta0(double tol, const std::string& out) {
  DeGennesResult r = theta0(tol);
  std::ostringstream canon;
  canon << "theta0|tol=" << fmt_g17(tol);
  char hb[24];
  std::snprintf(hb, sizeof hb, "%016llx",
                static_cast<unsigned long long>(config_hash(canon.str())));
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = hb;
  j["theta0"] = r.theta0;
  j["xi0"] = r.xi0;
  j["truncation"] = r.truncation;
  j["grid"] = r.grid;
  j["tol"] = r.tol;
  write_file(out, j.dump(2) + "\n");
  return 0;
}

int cmd_riesz(const std::string& domain_arg, double beta, int k,
              const std::string& out) {
  DomainSpec spec = load_domain(domain_arg);
  if (spec.kind != DomainKind::disk)
    throw ValidationError("riesz: closed-form verification needs a disk domain");
  std::ostringstream canon;
  canon << "riesz|" << spec.id() << "|beta=" << fmt_g17(beta) << "|k=" << k;
  uint64_t hash = config_hash(canon.str());
  Spectrum sp = disk_spectrum(spec.R, beta, k);
  GeometricSummary g = summarize(spec);
  RieszReport rep = verify_spectrum(sp, beta, g.area, k);
  std::ostringstream csv;
  write_riesz_csv(csv, rep, hash);
  write_file(out, csv.str());
  return rep.riesz_ok && rep.averages_ok && rep.singles_ok ? 0 : 2;
}

int cmd_sweep(const std::string& curve_arg, const std::string& hs, double beta,
              double mesh_factor, const std::string& out) {
  CurveSpec curve;
  DomainSpec probe = parse_domain("tube:curve=" + curve_arg + ",h=0.01");
  curve = probe.curve;
  CurveInvariants inv = curve_invariants(curve);
  double lamG = curve_lambda1(inv.length, inv.enclosed_area, beta);
  double flux = beta * inv.enclosed_area / (2 * kPi);
  bool integer_flux = std::abs(flux - std::llround(flux)) < 1e-12;

  std::ostringstream canon;
  canon << "sweep|" << curve.id() << "|hs=" << hs << "|beta=" << fmt_g17(beta)
        << "|factor=" << fmt_g17(mesh_factor);
  uint64_t hash = config_hash(canon.str());

  std::ostringstream csv;
  char hb[80];
  std::snprintf(hb, sizeof hb, "# magspec %s config=%016llx\n", kVersion,
                static_cast<unsigned long long>(hash));
  csv << hb << "h,fem_lambda1,curve_lambda1,tube_lower\n";
  for (double h : parse_list(hs)) {
    TriangleMesh mesh = generate(tube_domain(curve, h), h * mesh_factor);
    HermitianSystem sys = assemble_magnetic(mesh, standard_potential(beta));
    Spectrum sp = smallest(sys, 1, 1e-9);
    Bound lo = tube_lb(lamG, beta, h, integer_flux);
    csv << fmt_g17(h) << ',' << fmt_g17(sp.eigenvalues[0]) << ','
        << fmt_g17(lamG) << ',' << fmt_g17(lo.value) << '\n';
  }
  write_file(out, csv.str());
  return 0;
}

int cmd_figure_dvsn(const std::string& rs, double beta, double h_rel,
                    const std::string& out) {
  std::ostringstream canon;
  canon << "figure-dvsn|Rs=" << rs << "|beta=" << fmt_g17(beta)
        << "|h=" << fmt_g17(h_rel);
  uint64_t hash = config_hash(canon.str());
  std::ostringstream csv;
  char hb[80];
  std::snprintf(hb, sizeof hb, "# magspec %s config=%016llx\n", kVersion,
                static_cast<unsigned long long>(hash));
  csv << hb << "R,lambda1_dirichlet,lambda1_neumann\n";
  for (double R : parse_list(rs)) {
    DomainSpec d;
    d.kind = DomainKind::disk;
    d.R = R;
    TriangleMesh mesh = generate(d, h_rel * std::max(R, 1.0));
    HermitianSystem sys = assemble_dirichlet(mesh, standard_potential(beta));
    Spectrum dsp = smallest(sys, 1, 1e-9);
    double lamN = disk_spectrum(R, beta, 1).eigenvalues[0];
    csv << fmt_g17(R) << ',' << fmt_g17(dsp.eigenvalues[0]) << ','
        << fmt_g17(lamN) << '\n';
  }
  write_file(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magnetic Neumann spectra, geometric bounds and semiclassical checks"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h / --h for the mesh size

  std::string domain, out, method = "fem", constants_file, hs = "0.2,0.1,0.05";
  std::string rs = "0.5,1,2,4", curve_arg = "ellipse,a=1,b=0.5";
  double beta = 1.0, h = 0.05, tol = 1e-8, lmax = 1.2, rmin = 0.2, rmax = 6.0,
         rstep = 0.05, perturb = 0.0, mesh_factor = 0.25, h_rel = 0.04;
  int k = 10, nmax = 10;
  unsigned seed = 42;
  bool fast = false, circle_mode = false;

  auto* sp = app.add_subcommand("spectrum", "mesh, assemble and solve");
  sp->set_help_flag("--help", "print help");
  sp->add_option("--domain", domain)->required();
  sp->add_option("--beta", beta);
  sp->add_option("--h", h);
  sp->add_option("--k", k);
  sp->add_option("--tol", tol);
  sp->add_option("--seed", seed);
  sp->add_option("--method", method)->check(CLI::IsMember({"fem", "disk", "circle"}));
  sp->add_option("--out", out);

  auto* br = app.add_subcommand("disk-branches", "disk branch curve data");
  br->set_help_flag("--help", "print help");
  br->add_option("--Rmin", rmin);
  br->add_option("--Rmax", rmax);
  br->add_option("--Rstep", rstep);
  br->add_option("--nmax", nmax);
  br->add_option("--beta", beta);
  br->add_option("--lmax", lmax);
  br->add_flag("--circle", circle_mode, "curve eigenvalue instead of disk branches");
  br->add_option("--out", out);

  auto* bd = app.add_subcommand("bounds", "bound report with margins");
  bd->set_help_flag("--help", "print help");
  bd->add_option("--domain", domain)->required();
  bd->add_option("--beta", beta);
  bd->add_option("--h", h);
  bd->add_option("--k", k);
  bd->add_option("--constants-file", constants_file);
  bd->add_option("--out", out);

  auto* vf = app.add_subcommand("verify", "run the verification suite");
  vf->set_help_flag("--help", "print help");
  vf->add_flag("--fast", fast, "closed-form-only subset");
  vf->add_option("--perturb", perturb, "inflate eigenvalues (negative control)");

  auto* th = app.add_subcommand("theta0", "de Gennes constant");
  th->set_help_flag("--help", "print help");
  th->add_option("--tol", tol);
  th->add_option("--out", out);

  auto* rz = app.add_subcommand("riesz", "semiclassical checks on a disk spectrum");
  rz->set_help_flag("--help", "print help");
  rz->add_option("--domain", domain)->required();
  rz->add_option("--beta", beta);
  rz->add_option("--k", k);
  rz->add_option("--out", out);

  auto* sw = app.add_subcommand("sweep", "tube width sweep");
  sw->set_help_flag("--help", "print help");
  sw->add_option("--curve", curve_arg, "e.g. ellipse,a=1,b=0.5 or circle,R=1.4");
  sw->add_option("--tube-hs", hs);
  sw->add_option("--beta", beta);
  sw->add_option("--mesh-factor", mesh_factor, "mesh h as a fraction of tube h");
  sw->add_option("--out", out);

  auto* fg = app.add_subcommand("figure", "figure data series");
  fg->set_help_flag("--help", "print help");
  std::string which = "dvsn";
  fg->add_option("name", which)->check(CLI::IsMember({"dvsn"}));
  fg->add_option("--Rs", rs);
  fg->add_option("--beta", beta);
  fg->add_option("--h-rel", h_rel);
  fg->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (sp->parsed())
      return cmd_spectrum(domain, beta, h, k, tol, seed, method, out);
    if (br->parsed())
      return cmd_disk_branches(rmin, rmax, rstep, nmax, beta, lmax, circle_mode, out);
    if (bd->parsed())
      return cmd_bounds(domain, beta, h, k, constants_file, out);
    if (vf->parsed()) return cmd_verify(fast, perturb);
    if (th->parsed()) return cmd_theta0(std::max(tol, 1e-6), out);
    if (rz->parsed()) return cmd_riesz(domain, beta, k, out);
    if (sw->parsed()) return cmd_sweep(curve_arg, hs, beta, mesh_factor, out);
    if (fg->parsed()) return cmd_figure_dvsn(rs, beta, h_rel, out);
  } catch (const magspec::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const magspec::SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const magspec::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
