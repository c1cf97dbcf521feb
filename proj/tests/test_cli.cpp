/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "semiop/matrix_io.hpp"
#include "semiop/rng.hpp"

using namespace semiop;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

const char* cli_path() {
  const char* p = std::getenv("SEMIOP_BIN");
  REQUIRE_MESSAGE(p != nullptr, "SEMIOP_BIN must point at the semiop binary");
  return p;
}

fs::path temp_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "semiop_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = temp_dir() / "cli_output.txt";
  const std::string cmd = std::string(cli_path()) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path p = temp_dir() / name;
  std::ofstream out(p);
  out << content;
  return p.string();
}

std::string nilpotent_json() {
  return R"({"n":2,"entries":[[[0,0],[1,0]],[[0,0],[0,0]]]})";
}

std::string diag_json(double a, double b) {
  std::ostringstream s;
  s << R"({"n":2,"entries":[[[)" << a << R"(,0],[0,0]],[[0,0],[)" << b << R"(,0]]]})";
  return s.str();
}

}  // namespace

TEST_CASE("matrix files: write/read round trip is bit exact") {
  Rng rng(51);
  ComplexMatrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      m(i, j) = Complex(rng.next_gaussian() * 1e3, rng.next_gaussian() * 1e-7);
  const std::string path = (temp_dir() / "roundtrip.json").string();
  write_matrix_file(path, m);
  const ComplexMatrix back = read_matrix_file(path);
  REQUIRE(back.dim() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));
}

TEST_CASE("matrix files: schema violations raise MatrixIoError") {
  CHECK_THROWS_AS(parse_matrix_json("not json"), MatrixIoError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"n":2,"entries":[[[0,0]]]})"), MatrixIoError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"n":0,"entries":[]})"), MatrixIoError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"entries":[]})"), MatrixIoError);
}

TEST_CASE("cli compute: numerical radius of the nilpotent shift is 1/2") {
  const std::string t = write_file("nilp.json", nilpotent_json());
  const RunResult r = run_cli("compute --op " + t + " --quantity wa");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("value = 0.5\n") != std::string::npos);
  CHECK(r.output.find("certified = true") != std::string::npos);
}

TEST_CASE("cli compute: spectral norm via seminorm at lambda = 1") {
  const std::string t = write_file("d31.json", diag_json(3.0, 1.0));
  const RunResult r = run_cli("compute --op " + t + " --quantity seminorm --lambda 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("value = 3\n") != std::string::npos);
}

TEST_CASE("cli compute: byte-stable output for a fixed seed") {
  const std::string t = write_file("nilp2.json", nilpotent_json());
  const std::string args = "compute --op " + t + " --quantity seminorm --lambda 0.25 --seed 7";
  const RunResult r1 = run_cli(args);
  const RunResult r2 = run_cli(args);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
}

TEST_CASE("cli exit codes: parse, positivity, membership") {
  const std::string bad = write_file("bad.json", "{broken");
  CHECK(run_cli("compute --op " + bad + " --quantity wa").exit_code == 2);
  CHECK(run_cli("compute --op /no/such/file.json --quantity wa").exit_code == 2);

  const std::string t = write_file("nilp3.json", nilpotent_json());
  const std::string indefinite = write_file("indef.json", diag_json(1.0, -0.5));
  CHECK(run_cli("compute --op " + t + " --a " + indefinite + " --quantity wa").exit_code == 3);

  const std::string rank1 = write_file("rank1.json", diag_json(1.0, 0.0));
  const RunResult nm = run_cli("compute --op " + t + " --a " + rank1 + " --quantity wa");
  CHECK(nm.exit_code == 4);
  CHECK(nm.output.find("infinite") != std::string::npos);

  CHECK(run_cli("compute --op " + t + " --quantity seminorm --lambda 1.5").exit_code == 2);
  CHECK(run_cli("compute --op " + t + " --quantity seminorm").exit_code == 2);  // missing lambda
}

TEST_CASE("cli sweep: endpoint columns and the sandwich invariant") {
  const std::string t = write_file("nilp4.json", nilpotent_json());
  const std::string csv = (temp_dir() / "sweep.csv").string();
  const RunResult r = run_cli("sweep --op " + t + " --steps 5 --out " + csv);
  REQUIRE(r.exit_code == 0);

  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "lambda,seminorm,w_a,norm_a,certified");
  // Closed form for the nilpotent shift: sqrt(1/(4(1-l))) then sqrt(l).
  const double expected[5] = {0.5, std::sqrt(1.0 / 3.0), std::sqrt(0.5), std::sqrt(0.75), 1.0};
  double first_sn = -1.0, last_sn = -1.0, w = -1.0, norm_a = -1.0;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double lam, sn;
    std::string cert;
    ls >> lam >> sn >> w >> norm_a >> cert;
    CHECK(w - 1e-6 <= sn);
    CHECK(sn <= norm_a + 1e-6);
    REQUIRE(rows < 5);
    CHECK(sn == doctest::Approx(expected[rows]).epsilon(1e-6));
    if (rows == 0) first_sn = sn;
    last_sn = sn;
    ++rows;
  }
  CHECK(rows == 5);
  CHECK(std::abs(first_sn - w) <= 1e-6);
  CHECK(std::abs(last_sn - norm_a) <= 1e-6);

  CHECK(run_cli("sweep --op " + t + " --steps 1 --out " + csv).exit_code == 2);
  CHECK(run_cli("sweep --op " + t + " --steps 5 --out /no/such/dir/s.csv").exit_code == 5);
}

TEST_CASE("cli orth: verdicts for the classical pairs") {
  const std::string t = write_file("e1.json", diag_json(1.0, 0.0));
  const std::string s = write_file("e2.json", diag_json(0.0, 1.0));
  const RunResult r = run_cli("orth --t " + t + " --s " + s + " --lambda 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("orthogonal = true") != std::string::npos);
  CHECK(r.output.find("certificate = passed") != std::string::npos);

  const RunResult r2 = run_cli("orth --t " + t + " --s " + t + " --lambda 1");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("orthogonal = false") != std::string::npos);
}

TEST_CASE("cli triangle: scaling pair holds, orthogonal pair does not") {
  const std::string t = write_file("e1b.json", diag_json(1.0, 0.0));
  const std::string s = write_file("e2b.json", diag_json(0.0, 1.0));
  const RunResult r = run_cli("triangle --t " + t + " --s " + t + " --lambda 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("holds = true") != std::string::npos);

  const RunResult r2 = run_cli("triangle --t " + t + " --s " + s + " --lambda 1");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("holds = false") != std::string::npos);
}

TEST_CASE("cli verify: suites run, unknown suites exit 2") {
  const RunResult r = run_cli("verify --suite endpoints --trials 5 --seed 42");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("suite=endpoints trials=5 passes=5 failures=0") != std::string::npos);

  CHECK(run_cli("verify --suite bogus --trials 5").exit_code == 2);
}

TEST_CASE("cli: SEMIOP_SEED environment variable steers the default seed") {
  const std::string t = write_file("nilp5.json", nilpotent_json());
  const std::string base = "compute --op " + t + " --quantity seminorm --lambda 0.4";
  const fs::path out = temp_dir() / "cli_output.txt";
  const std::string cmd_env = "SEMIOP_SEED=123 " + std::string(cli_path()) + " " + base + " > " +
                              out.string() + " 2>&1";
  REQUIRE(std::system(cmd_env.c_str()) == 0);
  std::ifstream in1(out);
  std::ostringstream b1;
  b1 << in1.rdbuf();

  // An explicit flag must win over the environment.
  const std::string cmd_flag = "SEMIOP_SEED=123 " + std::string(cli_path()) + " " + base +
                               " --seed 123 > " + out.string() + " 2>&1";
  REQUIRE(std::system(cmd_flag.c_str()) == 0);
  std::ifstream in2(out);
  std::ostringstream b2;
  b2 << in2.rdbuf();
  CHECK(b1.str() == b2.str());
}
