// End-to-end checks of the command-line driver (exit codes, determinism).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string binary() {
  const char* p = std::getenv("MAGSPEC_BIN");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args) {
  std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("spectrum runs and is byte-deterministic") {
  std::string a = "/tmp/magspec_cli_a.csv", b = "/tmp/magspec_cli_b.csv";
  std::string args =
      "spectrum --domain disk:R=1 --beta 1 --k 6 --h 0.08 --seed 42 --out ";
  CHECK(run(args + a) == 0);
  CHECK(run(args + b) == 0);
  std::string ca = slurp(a), cb = slurp(b);
  CHECK(!ca.empty());
  CHECK(ca == cb);
  // 6 data rows after the hash comment and the header
  int rows = 0;
  std::stringstream ss(ca);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty() && line[0] != '#' && line.find("index") != 0) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("closed-form methods through the CLI") {
  CHECK(run("spectrum --domain disk:R=1 --method disk --k 4 --out "
            "/tmp/magspec_cli_cf.csv") == 0);
  CHECK(run("spectrum --domain rectangle:w=1,h=1 --method disk --k 2") == 1);
}

TEST_CASE("invalid specs exit with code 1") {
  CHECK(run("spectrum --domain disk:R=-1 --k 2") == 1);
  CHECK(run("spectrum --domain annulus:r_in=2,r_out=1 --k 2") == 1);
  CHECK(run("disk-branches --Rmin 2 --Rmax 1") == 1);
}

TEST_CASE("io failures exit with code 3") {
  CHECK(run("spectrum --domain disk:R=1 --method disk --k 3 --out "
            "/nonexistent-dir/x.csv") == 3);
}

TEST_CASE("constants file overrides") {
  {
    std::ofstream f("/tmp/magspec_cli_constants.json");
    f << "{\"C1\": 0.5, \"M\": 9}\n";
  }
  std::string out = "/tmp/magspec_cli_bounds_const.json";
  CHECK(run("bounds --domain disk:R=1 --beta 1 --h 0.1 --k 1 "
            "--constants-file /tmp/magspec_cli_constants.json --out " +
            out) == 0);
  std::string j = slurp(out);
  CHECK(j.find("\"C1\": 0.5") != std::string::npos);
  CHECK(j.find("\"C1_known\": true") != std::string::npos);
  {
    std::ofstream f("/tmp/magspec_cli_constants_bad.json");
    f << "{\"Lambda\": 0.9}\n";  // above Theta0
  }
  CHECK(run("bounds --domain disk:R=1 --beta 1 --h 0.1 --k 1 "
            "--constants-file /tmp/magspec_cli_constants_bad.json") == 1);
}

TEST_CASE("theta0 command") {
  std::string out = "/tmp/magspec_cli_theta0.json";
  CHECK(run("theta0 --tol 1e-5 --out " + out) == 0);
  std::string j = slurp(out);
  CHECK(j.find("\"theta0\"") != std::string::npos);
  CHECK(j.find("0.5901") != std::string::npos);
}

TEST_CASE("bounds report") {
  std::string out = "/tmp/magspec_cli_bounds.json";
  CHECK(run("bounds --domain disk:R=1 --beta 1 --h 0.08 --k 2 --out " + out) == 0);
  std::string j = slurp(out);
  CHECK(j.find("\"bounds\"") != std::string::npos);
  CHECK(j.find("\"conditional\"") != std::string::npos);
  CHECK(j.find("circumradius") != std::string::npos);

  std::string out2 = "/tmp/magspec_cli_bounds2.json";
  CHECK(run("bounds --domain annulus:r_in=1,r_out=2 --beta 1 --h 0.09 --k 1 --out " +
            out2) == 0);
  std::string j2 = slurp(out2);
  CHECK(j2.find("not simply connected") != std::string::npos);
}

TEST_CASE("branch data emission") {
  std::string out = "/tmp/magspec_cli_branches.csv";
  CHECK(run("disk-branches --Rmin 0.5 --Rmax 1.5 --Rstep 0.5 --nmax 2 --out " +
            out) == 0);
  std::string c = slurp(out);
  CHECK(c.find("n,j,lambda,R,beta,residual") != std::string::npos);
  CHECK(run("disk-branches --Rmin 0.5 --Rmax 1.5 --Rstep 0.5 --circle --out " +
            out) == 0);
}

TEST_CASE("riesz report emission") {
  std::string out = "/tmp/magspec_cli_riesz.csv";
  CHECK(run("riesz --domain disk:R=4 --beta 1 --k 20 --out " + out) == 0);
  std::string c = slurp(out);
  CHECK(c.find("z,R1_emp,R1_low,margin,valid") != std::string::npos);
  CHECK(run("riesz --domain rectangle:w=1,h=1 --k 5") == 1);
}

TEST_CASE("sweep and figure data") {
  CHECK(run("sweep --curve circle,R=1.4142135623730951 --tube-hs 0.2,0.1 "
            "--beta 1 --out /tmp/magspec_cli_sweep.csv") == 0);
  std::string s = slurp("/tmp/magspec_cli_sweep.csv");
  CHECK(s.find("h,fem_lambda1,curve_lambda1,tube_lower") != std::string::npos);
  CHECK(run("figure dvsn --Rs 0.5,1 --beta 1 --out /tmp/magspec_cli_dvsn.csv") == 0);
  std::string f = slurp("/tmp/magspec_cli_dvsn.csv");
  CHECK(f.find("R,lambda1_dirichlet,lambda1_neumann") != std::string::npos);
}

TEST_CASE("fast verification subset and its negative control") {
  CHECK(run("verify --fast") == 0);
  CHECK(run("verify --fast --perturb 0.1") != 0);
}
