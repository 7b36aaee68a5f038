#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "magspec/io.hpp"

namespace magspec {

uint64_t config_hash(const std::string& canonical) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void header(std::ostream& os, uint64_t hash) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "# magspec %s config=%016llx\n", kVersion,
                static_cast<unsigned long long>(hash));
  os << buf;
}

}  // namespace

void write_spectrum_csv(std::ostream& os, const Spectrum& sp, uint64_t hash) {
  header(os, hash);
  os << "index,lambda,residual,method,beta,domain_id,h\n";
  for (size_t i = 0; i < sp.eigenvalues.size(); ++i) {
    os << (i + 1) << ',' << fmt_g17(sp.eigenvalues[i]) << ','
       << fmt_g17(sp.residuals[i]) << ',' << sp.method << ',' << fmt_g17(sp.beta)
       << ',' << sp.domain_id << ','
       << (sp.mesh_h ? fmt_g17(*sp.mesh_h) : std::string("")) << '\n';
  }
}

void write_branch_csv(std::ostream& os, const std::vector<DiskBranchPoint>& pts,
                      uint64_t hash) {
  header(os, hash);
  os << "n,j,lambda,R,beta,residual\n";
  for (const auto& p : pts) {
    os << p.n << ',' << p.j << ',' << fmt_g17(p.lambda) << ',' << fmt_g17(p.R)
       << ',' << fmt_g17(p.beta) << ',' << fmt_g17(p.residual) << '\n';
  }
}

void write_riesz_csv(std::ostream& os, const RieszReport& rep, uint64_t hash) {
  header(os, hash);
  os << "z,R1_emp,R1_low,margin,valid\n";
  for (size_t i = 0; i < rep.z_grid.size(); ++i) {
    os << fmt_g17(rep.z_grid[i]) << ',' << fmt_g17(rep.r1_empirical[i]) << ','
       << fmt_g17(rep.r1_lower[i]) << ',' << fmt_g17(rep.margins[i]) << ','
       << (rep.valid[i] ? 1 : 0) << '\n';
  }
}

std::string bounds_to_json(const std::vector<Bound>& bounds,
                           const std::vector<Verdict>& verdicts,
                           const BoundConstants& constants, double fem_lambda1,
                           uint64_t hash) {
  nlohmann::json j;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  j["version"] = kVersion;
  j["config"] = buf;
  j["fem_lambda1"] = fem_lambda1;
  j["constants_used"] = {{"C1", constants.C1},
                         {"C1_known", constants.C1_known},
                         {"M", constants.M},
                         {"Lambda", constants.Lambda},
                         {"c", constants.c()},
                         {"C", constants.C()}};
  auto arr = nlohmann::json::array();
  for (size_t i = 0; i < bounds.size(); ++i) {
    const Bound& b = bounds[i];
    nlohmann::json e;
    e["theorem"] = b.provenance;
    e["side"] = b.side == Bound::Side::upper ? "upper" : "lower";
    e["value"] = b.value;
    e["strict"] = b.strict;
    e["hypotheses_ok"] = b.hypotheses_ok;
    e["messages"] = b.messages;
    e["conditional"] = b.conditional;
    if (i < verdicts.size()) {
      const Verdict& v = verdicts[i];
      e["verdict"] = v.status == Verdict::Status::pass
                         ? "pass"
                         : (v.status == Verdict::Status::fail ? "fail"
                                                              : "conditional");
      e["margin"] = v.margin;
    }
    arr.push_back(e);
  }
  j["bounds"] = arr;
  return j.dump(2);
}

}  // namespace magspec
