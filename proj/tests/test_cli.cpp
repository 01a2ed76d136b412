// SPDX-License-Identifier: Apache-2.0
//
// Exercises the installed command grammar through a subprocess. The binary
// path arrives in WSIM_CLI and the shipped scheme directory in WSIM_SCHEMES.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_command(const std::string& cmd) {
  RunResult res;
  std::string full = cmd + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.output.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string cli() {
  const char* path = std::getenv("WSIM_CLI");
  REQUIRE(path != nullptr);
  return path;
}

std::string schemes_dir() {
  const char* path = std::getenv("WSIM_SCHEMES");
  REQUIRE(path != nullptr);
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify subcommand runs a suite and reports pass") {
  RunResult r = run_command(cli() + " verify states");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[PASS]") != std::string::npos);
  CHECK(r.output.find("suite states: PASS") != std::string::npos);
}

TEST_CASE("verify rejects unknown suites with usage exit code") {
  RunResult r = run_command(cli() + " verify bogus");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("unknown suite") != std::string::npos);
}

TEST_CASE("verify all twice produces byte-identical reports") {
  std::string a = "/tmp/wsim_report_a.json";
  std::string b = "/tmp/wsim_report_b.json";
  RunResult ra = run_command(cli() + " verify all --seed 0 --json " + a);
  RunResult rb = run_command(cli() + " verify all --seed 0 --json " + b);
  CHECK(ra.exit_code == 0);
  CHECK(rb.exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("optics-run executes the shipped schemes") {
  RunResult tritter =
      run_command(cli() + " optics-run " + schemes_dir() + "/tritter_w3v.scheme");
  CHECK(tritter.exit_code == 0);
  CHECK(tritter.output.find("probability 0.111111111111") != std::string::npos);
  CHECK(tritter.output.find("fidelity 1") != std::string::npos);

  RunResult multiport =
      run_command(cli() + " optics-run " + schemes_dir() + "/multiport_w4.scheme");
  CHECK(multiport.exit_code == 0);
  CHECK(multiport.output.find("probability 1") != std::string::npos);

  std::string out = "/tmp/wsim_scheme_report.json";
  RunResult with_json = run_command(cli() + " optics-run " + schemes_dir() +
                                    "/multiport_w4v.scheme --json " + out);
  CHECK(with_json.exit_code == 0);
  std::string report = slurp(out);
  CHECK(report.find("\"probability\": \"0.0625\"") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("optics-run reports parse failures with the offending field") {
  std::string path = "/tmp/wsim_bad.scheme";
  {
    std::ofstream bad(path);
    bad << "{\"name\": \"broken\", \"modes\": [\"a\"], \"source\": {\"kind\": "
           "\"sps\"}, \"postselect\": {}}";
  }
  RunResult r = run_command(cli() + " optics-run " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("postselect") != std::string::npos);
  std::remove(path.c_str());

  RunResult missing = run_command(cli() + " optics-run /tmp/nonexistent.scheme");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("protocol subcommand") {
  RunResult qkd = run_command(cli() + " protocol qkd --rounds 5000 --seed 7");
  CHECK(qkd.exit_code == 0);
  CHECK(qkd.output.find("qkd: rounds 5000") != std::string::npos);

  RunResult distill = run_command(
      cli() + " protocol distill --a 0.8 --b 0.5196152422706632 --c 0.3");
  CHECK(distill.exit_code == 0);
  CHECK(distill.output.find("success 0.27") != std::string::npos);
  CHECK(distill.output.find("fidelity 1") != std::string::npos);

  RunResult teleport = run_command(cli() + " protocol teleport --channel w --trials 20");
  CHECK(teleport.exit_code == 0);
  CHECK(teleport.output.find("min branch fidelity 1") != std::string::npos);

  RunResult bad = run_command(cli() + " protocol snoop");
  CHECK(bad.exit_code == 2);

  RunResult bad_rounds = run_command(cli() + " protocol qkd --rounds 0");
  CHECK(bad_rounds.exit_code == 2);

  RunResult bad_coeffs = run_command(cli() + " protocol distill --a 0.3 --b 0.3 --c 0.9");
  CHECK(bad_coeffs.exit_code == 2);
}

TEST_CASE("transcript files are reproducible from the seed") {
  std::string a = "/tmp/wsim_qss_a.json";
  std::string b = "/tmp/wsim_qss_b.json";
  CHECK(run_command(cli() + " protocol qss --rounds 2000 --seed 5 --json " + a).exit_code ==
        0);
  CHECK(run_command(cli() + " protocol qss --rounds 2000 --seed 5 --json " + b).exit_code ==
        0);
  std::string ja = slurp(a);
  CHECK(ja == slurp(b));
  CHECK(ja.find("\"qubits_per_key_bit\"") != std::string::npos);
  CHECK(ja.find("\"reconstruction_errors\": 0") != std::string::npos);
  std::remove(a.c_str());
  std::remove(b.c_str());
}
