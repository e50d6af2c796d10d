#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

TEST_SUITE("cli") {
  namespace {
    struct RunResult {
      int exit_code;
      std::string out;
    };

    RunResult run_cli(const std::string& args, const std::string& out_file) {
      std::string cmd = std::string(NCQM_CLI_PATH) + " " + args + " >" + out_file + " 2>/dev/null";
      int rc = std::system(cmd.c_str());
      RunResult r;
      r.exit_code = WEXITSTATUS(rc);
      std::ifstream in(out_file);
      std::stringstream ss;
      ss << in.rdbuf();
      r.out = ss.str();
      return r;
    }
  }

  TEST_CASE("verify succeeds in both modes and is deterministic") {
    auto a = run_cli("verify --nmax 8", "/tmp/ncqm_cli_v1.csv");
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("# ncqm.verify.v1") == 0);
    auto b = run_cli("verify --nmax 8", "/tmp/ncqm_cli_v2.csv");
    CHECK(a.out == b.out);  // byte-identical reruns

    auto x = run_cli("verify --nmax 8 --exact", "/tmp/ncqm_cli_v3.csv");
    CHECK(x.exit_code == 0);
    CHECK(x.out.find(",exact,") != std::string::npos);
  }

  TEST_CASE("spectrum emits the fixed column set") {
    auto r = run_cli("spectrum --lambda 0.1 --n 1:2 --nmax 200", "/tmp/ncqm_cli_s.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("n,j,lambda,E_analytic,E_numeric,rel_err,n_max") != std::string::npos);
    int data_lines = 0;
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line))
      if (!line.empty() && line[0] != '#' && line[0] != 'n') ++data_lines;
    CHECK(data_lines == 2);
  }

  TEST_CASE("spectrum at lambda 0 keeps the analytic column") {
    auto r = run_cli("spectrum --lambda 0 --n 1:3 --nmax 64", "/tmp/ncqm_cli_s0.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("-0.5,nan") != std::string::npos);
    CHECK(r.out.find("-0.055555555555555552,nan") != std::string::npos);
  }

  TEST_CASE("wavefunction compares the two routes") {
    auto r = run_cli("wavefunction --lambda 0.1 --n 1 --j 0 --nmax 150 --format json",
                     "/tmp/ncqm_cli_w.json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"schema\": \"ncqm.wavefunction.v1\"") != std::string::npos);
    CHECK(r.out.find("R_analytic") != std::string::npos);
  }

  TEST_CASE("wavefunction output does not depend on m") {
    auto a = run_cli("wavefunction --lambda 0.2 --n 2 --j 1 --m 1 --nmax 120", "/tmp/ncqm_cli_m1.csv");
    auto b = run_cli("wavefunction --lambda 0.2 --n 2 --j 1 --m -1 --nmax 120", "/tmp/ncqm_cli_m2.csv");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("spectrum reruns are byte-identical") {
    auto a = run_cli("spectrum --lambda 0.1 --n 1:2 --nmax 150", "/tmp/ncqm_cli_d1.csv");
    auto b = run_cli("spectrum --lambda 0.1 --n 1:2 --nmax 150", "/tmp/ncqm_cli_d2.csv");
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }

  TEST_CASE("lambda0 reports the paper-scale quantities") {
    auto r = run_cli("lambda0", "/tmp/ncqm_cli_l.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("lambda0_over_r0,0.375") != std::string::npos);
    CHECK(r.out.find("partial_sum_1000") != std::string::npos);
  }

  TEST_CASE("convergence lambda study carries the fitted slope") {
    auto r = run_cli("convergence --study lambda --n 1 --points 7", "/tmp/ncqm_cli_c.csv");
    CHECK(r.exit_code == 0);
    auto pos = r.out.find("# fitted_loglog_slope = ");
    REQUIRE(pos != std::string::npos);
    double slope = std::strtod(r.out.c_str() + pos + 24, nullptr);
    CHECK(std::abs(slope - 2.0) <= 0.05);
  }

  TEST_CASE("--out writes the table to a file") {
    std::remove("/tmp/ncqm_cli_out.csv");
    auto r = run_cli("lambda0 --out /tmp/ncqm_cli_out.csv", "/tmp/ncqm_cli_out_stdout");
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in("/tmp/ncqm_cli_out.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("# ncqm.lambda0.v1") == 0);
  }

  TEST_CASE("invalid configurations exit with code 2") {
    CHECK(run_cli("spectrum --lambda -1", "/tmp/ncqm_cli_e1").exit_code == 2);
    CHECK(run_cli("wavefunction --j 3 --n 2", "/tmp/ncqm_cli_e2").exit_code == 2);
    CHECK(run_cli("wavefunction --j 1 --m 4 --n 2", "/tmp/ncqm_cli_e3").exit_code == 2);
    CHECK(run_cli("nonsense", "/tmp/ncqm_cli_e4").exit_code == 2);
    CHECK(run_cli("spectrum --n 4:1", "/tmp/ncqm_cli_e5").exit_code == 2);
  }
}
