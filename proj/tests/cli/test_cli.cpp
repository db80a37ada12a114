// End-to-end tests of the cmpgeo binary: exit-code contract, report
// determinism and the varifold file round trip.  The binary path arrives in
// the CMPGEO_CLI environment variable (set by ctest).

#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
  const char* env = std::getenv("CMPGEO_CLI");
  REQUIRE_MESSAGE(env != nullptr, "CMPGEO_CLI must point at the cmpgeo binary");
  return env;
}

int run(const std::string& args, const std::string& out_file = "/dev/null") {
  const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// report text with '#' metadata lines stripped (the determinism contract)
std::string strip_meta(const std::string& text) {
  std::istringstream is(text);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
    if (line.empty() || line[0] != '#') os << line << "\n";
  return os.str();
}

}  // namespace

TEST_CASE("barrier golden example") {
  const int code =
      run("barrier --c 0 --ell 2 --lam1 1 --lam2 1 --h 0 --R 1 --report cli_barrier.txt",
          "cli_barrier_out.txt");
  CHECK(code == 0);
  const std::string rep = slurp("cli_barrier.txt");
  CHECK(rep.find("case A1") != std::string::npos);
  CHECK(rep.find("delta_bar 0.18393972") != std::string::npos);
}

TEST_CASE("barrier certification on the ball") {
  const int code = run(
      "barrier --c 0 --ell 2 --lam1 0.5 --lam2 0.5 --h 0 --R 1 --certify ball --rho 2 "
      "--report cli_barrier_cert.txt");
  CHECK(code == 0);
  const std::string rep = slurp("cli_barrier_cert.txt");
  CHECK(rep.find("verdict consistent") != std::string::npos);
}

TEST_CASE("enclosure bound") {
  const int code =
      run("enclosure --lam 0.5 --H 0.1 --c 1 --dist-boundary 10 --report cli_enc.txt");
  CHECK(code == 0);
  const std::string rep = slurp("cli_enc.txt");
  CHECK(rep.find("case B") != std::string::npos);
  CHECK(rep.find("bound 0.4") != std::string::npos);
}

TEST_CASE("riccati domain end") {
  const int code = run("riccati --tau0 -1 --c 0 --t-max 0.9 --report cli_ric.txt");
  CHECK(code == 0);
  const std::string rep = slurp("cli_ric.txt");
  CHECK(rep.find("domain_end 0.9") != std::string::npos);  // horizon shorter than the pole
  CHECK(rep.find("verdict consistent") != std::string::npos);
}

TEST_CASE("pminus on a diagonal matrix") {
  const int code = run("pminus --ell 2 --diag 2,2,2,-2 --report cli_pm.txt");
  CHECK(code == 0);
  const std::string rep = slurp("cli_pm.txt");
  CHECK(rep.find("p_minus 0\n") != std::string::npos);

  std::ofstream mf("cli_matrix.txt");
  mf << "1 0 0\n0 2 0\n0 0 3\n";
  mf.close();
  const int code2 = run("pminus --ell 2 --file cli_matrix.txt --report cli_pm2.txt");
  CHECK(code2 == 0);
  CHECK(slurp("cli_pm2.txt").find("p_minus 1.5\n") != std::string::npos);
}

TEST_CASE("exit-code contract") {
  SUBCASE("violated scenario exits 2") {
    const int code = run(
        "maxprin --sample sphere --size 1.3 --resolution 300 --u ball:2:1 --h 0 "
        "--sigma 0 --alpha 0 --d0 1 --gamma 0.3 --report cli_mp_bad.txt");
    CHECK(code == 2);
    CHECK(slurp("cli_mp_bad.txt").find("verdict violated") != std::string::npos);
  }
  SUBCASE("consistent scenario exits 0") {
    const int code = run(
        "maxprin --sample catenoid3d --resolution 72 --boundaryless --u slab:3.0 --h 0 "
        "--sigma 0 --alpha 0 --d0 3 --gamma 0.2 --report cli_mp_ok.txt");
    CHECK(code == 0);
    CHECK(slurp("cli_mp_ok.txt").find("verdict consistent") != std::string::npos);
  }
  SUBCASE("input errors exit 1") {
    CHECK(run("bogus-subcommand") == 1);
    CHECK(run("barrier --c 1 --ell 3 --lam1 0 --lam2 0.5 --h 0 --R 0.6") == 1);
    CHECK(run("growth --sample sphere --radii 1:2:4") == 1);  // span below one decade
  }
  SUBCASE("varifold-check detects an undersized h") {
    const int good = run(
        "varifold-check --sample sphere --resolution 2000 --h 1 --fields 5 --adversarial "
        "--report cli_vc1.txt");
    CHECK(good == 0);
    const int bad = run(
        "varifold-check --sample sphere --resolution 2000 --h 0.5 --fields 0 --adversarial "
        "--report cli_vc2.txt");
    CHECK(bad == 2);
  }
}

TEST_CASE("growth reports are deterministic modulo metadata") {
  const int c1 = run(
      "growth --sample catenoid2d --resolution 256 --radii 5:50:6 --report cli_g1.txt "
      "--csv cli_g1.csv");
  const int c2 = run(
      "growth --sample catenoid2d --resolution 256 --radii 5:50:6 --report cli_g2.txt");
  CHECK(c1 == 0);
  CHECK(c2 == 0);
  const std::string r1 = strip_meta(slurp("cli_g1.txt"));
  const std::string r2 = strip_meta(slurp("cli_g2.txt"));
  CHECK(r1 == r2);
  CHECK(r1.find("parabolic true") != std::string::npos);
  const std::string csv = slurp("cli_g1.csv");
  CHECK(csv.find("mass_x,mass_y") != std::string::npos);
}

TEST_CASE("growth on the sampled plane") {
  const int code = run("growth --sample plane --radii 10:100:5 --report cli_gp.txt");
  CHECK(code == 0);
  const std::string rep = slurp("cli_gp.txt");
  CHECK(rep.find("parabolic true") != std::string::npos);
}

TEST_CASE("sampler output is byte-for-byte reproducible") {
  CHECK(run("sample --kind catenoid2d --resolution 64 --out cli_det1.vf --report cli_d1.txt") == 0);
  CHECK(run("sample --kind catenoid2d --resolution 64 --out cli_det2.vf --report cli_d2.txt") == 0);
  const std::string a = slurp("cli_det1.vf"), b = slurp("cli_det2.vf");
  CHECK(!a.empty());
  CHECK(a == b);
}

TEST_CASE("sample/read round trip through the file format") {
  CHECK(run("sample --kind sphere --resolution 500 --out cli_sphere.vf --report cli_s.txt") == 0);
  CHECK(run("varifold-check --input cli_sphere.vf --h 1 --fields 3 --report cli_vc3.txt") == 0);
  CHECK(run("sample --kind catenoid2d --extent 4 --resolution 128 --out cli_cat.vf "
            "--report cli_s2.txt") == 0);
  CHECK(run("growth --input cli_cat.vf --radii 2:20:6 --report cli_g3.txt") == 0);
}

TEST_CASE("parabolic audits") {
  SUBCASE("plane with an equidistant function passes") {
    const int code = run(
        "parabolic --sample plane --size 12 --resolution 40 --boundaryless "
        "--u plane-dist:2 --h 0 --gamma 1 --report cli_p1.txt");
    CHECK(code == 0);
    CHECK(slurp("cli_p1.txt").find("status pass") != std::string::npos);
  }
  SUBCASE("catenoid2d with a slab barrier fails and localizes") {
    const int code = run(
        "parabolic --sample catenoid2d --resolution 256 --u slab:11.2 --h 0 --gamma 0.05 "
        "--radii 10:100:10 --report cli_p2.txt");
    CHECK(code == 2);
    const std::string rep = slurp("cli_p2.txt");
    CHECK(rep.find("status pass") == std::string::npos);
    CHECK(rep.find("failure_points 0\n") == std::string::npos);  // localization nonempty
  }
}

TEST_CASE("spectrum command") {
  const int code = run("spectrum --eps 0.1 --report cli_spec.txt");
  CHECK(code == 0);
  const std::string rep = slurp("cli_spec.txt");
  CHECK(rep.find("verdict consistent") != std::string::npos);
}

TEST_CASE("report directory environment variable") {
  const std::string cmd = "mkdir -p cli_repdir && CMPGEO_REPORT_DIR=cli_repdir " + cli_path() +
                          " enclosure --lam 1 --H 0 --c 0 --dist-boundary 3 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  CHECK(WEXITSTATUS(status) == 0);
  const std::string rep = slurp("cli_repdir/enclosure-report.txt");
  CHECK(rep.find("command enclosure") != std::string::npos);
  CHECK(rep.find("bound 3") != std::string::npos);
}
