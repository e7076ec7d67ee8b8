#include "doctest.h"

#include "pottscert/instances.hpp"
#include "pottscert/model.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using json = nlohmann::json;
using namespace pottscert;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(POTTSCERT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

json parse_report(const RunResult& res) {
  REQUIRE(!res.out.empty());
  return json::parse(res.out);
}

// Scratch directory per test process.
const fs::path& tmp_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("pottscert_cli_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string data_file(const char* name) {
  return (fs::path(POTTSCERT_TEST_DATA) / name).string();
}

}  // namespace

TEST_CASE("gen writes a deterministic instance and info reads it back") {
  std::string out1 = (tmp_dir() / "g1.potts").string();
  std::string out2 = (tmp_dir() / "g2.potts").string();
  RunResult gen1 = run_cli("gen --h 2 --w 3 --k 3 --seed 42 --out " + out1);
  CHECK(gen1.exit_code == 0);
  json rep = parse_report(gen1);
  CHECK(rep["command"] == "gen");
  CHECK(rep["n"] == 6);
  CHECK(rep["m"] == 7);
  CHECK(rep["k"] == 3);
  CHECK(rep.contains("tool_version"));

  RunResult gen2 = run_cli("gen --h 2 --w 3 --k 3 --seed 42 --out " + out2);
  CHECK(gen2.exit_code == 0);
  std::ifstream f1(out1), f2(out2);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 == s2);

  // The reported hash matches the library's value for the same seed.
  char expect[32];
  std::snprintf(expect, sizeof expect, "%016llx",
                static_cast<unsigned long long>(instance_hash(gen_grid(2, 3, 3, 42))));
  CHECK(rep["instance_hash"] == expect);

  RunResult info = run_cli("info --instance " + out1);
  CHECK(info.exit_code == 0);
  json irep = parse_report(info);
  CHECK(irep["n"] == 6);
  CHECK(irep["instance_hash"] == expect);
}

TEST_CASE("solve-map and solve-expansion agree on t1") {
  RunResult map = run_cli("solve-map --instance " + data_file("t1.potts"));
  CHECK(map.exit_code == 0);
  json mrep = parse_report(map);
  CHECK(mrep["energy"] == 1.0);
  CHECK(mrep["energy_exact"] == "1");
  CHECK(mrep["labeling"] == json::array({0, 1}));
  CHECK(mrep["visited"] == 4);

  RunResult exp = run_cli("solve-expansion --instance " + data_file("t1.potts") +
                          " --init zeros --order ascending");
  CHECK(exp.exit_code == 0);
  json erep = parse_report(exp);
  CHECK(erep["converged"] == true);
  CHECK(erep["energy_exact"] == "1");
  CHECK(erep["labeling"] == json::array({0, 1}));
}

TEST_CASE("certify and naive-bound reproduce the p4 pins") {
  std::string map_path = (tmp_dir() / "p4.map").string();
  RunResult map = run_cli("solve-map --instance " + data_file("p4.potts") + " --out " + map_path);
  REQUIRE(map.exit_code == 0);

  RunResult naive = run_cli("naive-bound --instance " + data_file("p4.potts") + " --map " +
                            map_path + " --objective hamming");
  CHECK(naive.exit_code == 0);
  json nrep = parse_report(naive);
  CHECK(nrep["method"] == "naive");
  CHECK(nrep["bound_exact"] == "1");
  CHECK(nrep["exact_value"] == true);

  RunResult gap = run_cli("naive-bound --instance " + data_file("p4.potts") + " --map " +
                          map_path + " --objective gap");
  CHECK(gap.exit_code == 0);
  CHECK(parse_report(gap)["bound_exact"] == "1.2");

  RunResult cert = run_cli("certify --instance " + data_file("p4.potts") + " --map " + map_path +
                           " --objective hamming");
  CHECK(cert.exit_code == 0);
  json crep = parse_report(cert);
  CHECK(crep["method"] == "certified");
  CHECK(crep["bound_exact"] == "0");
  CHECK(crep["solver_path"] == "exact");
}

TEST_CASE("verify-theorem and round-check batches pass") {
  RunResult vt = run_cli("verify-theorem --trials 5 --seed 7 --shape 2x3 --k 3 --workers 1");
  CHECK(vt.exit_code == 0);
  json vrep = parse_report(vt);
  CHECK(vrep["failures"] == 0);
  CHECK(vrep["trials"] == 5);
  CHECK(vrep["minima_total"].get<int>() >= 5);
  CHECK(vrep["solver_path"] == "exact");

  RunResult rc = run_cli("round-check --trials 2 --seed 3 --shape 2x2 --k 3");
  CHECK(rc.exit_code == 0);
  json rrep = parse_report(rc);
  CHECK(rrep["failures"] == 0);
  CHECK(rrep["checks"] == 2);
}

TEST_CASE("exit codes: usage 1, io 2, budget 3") {
  CHECK(run_cli("gen --h 2 --w 3").exit_code == 1);             // missing required flags
  CHECK(run_cli("nonsense-subcommand").exit_code == 1);
  CHECK(run_cli("info --instance /nonexistent.potts").exit_code == 2);
  CHECK(run_cli("certify --instance " + data_file("t1.potts") + " --map " +
                data_file("t1.potts") + " --objective hamming")
            .exit_code == 2);  // instance file is not a labeling

  std::string big = (tmp_dir() / "big.potts").string();
  REQUIRE(run_cli("gen --h 4 --w 4 --k 3 --seed 1 --out " + big).exit_code == 0);
  CHECK(run_cli("solve-map --instance " + big + " --budget 1000").exit_code == 3);

  std::string bad_path = "certify --instance " + data_file("t1.potts") + " --map " +
                         (tmp_dir() / "t1.map").string() + " --path neither";
  REQUIRE(run_cli("solve-map --instance " + data_file("t1.potts") + " --out " +
                  (tmp_dir() / "t1.map").string())
              .exit_code == 0);
  CHECK(run_cli(bad_path).exit_code == 1);
}
