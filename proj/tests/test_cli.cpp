#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "fbwave/io.hpp"

namespace fs = std::filesystem;
using namespace fbwave;

namespace {

struct Result {
  int status = -1;
  std::string output;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(FBWAVE_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  while (fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("fbwave_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("semiwave at c = 0 reproduces the closed-form slope") {
  const auto dir = scratch("semi");
  const auto r = cli("semiwave --f logistic:r=1 --d 1 --delta 2 --c 0 --out " + dir.string());
  REQUIRE(r.status == 0);
  const auto meta = io::read_json(dir / "semiwave.json");
  CHECK(meta.at("endpoint_slope").get<double>() == doctest::Approx(-1.2909944487358).epsilon(1e-10));
  const auto traj = io::read_csv(dir / "trajectory.csv");
  CHECK(traj.header == std::vector<std::string>{"q", "P"});
  const auto prof = io::read_csv(dir / "profile.csv");
  CHECK(prof.header == std::vector<std::string>{"x", "q"});
  CHECK(prof.rows.front()[1] == 2.0);
}

TEST_CASE("semiwave with automatic speed satisfies the speed law") {
  const auto dir = scratch("semi_auto");
  REQUIRE(cli("semiwave --c auto --out " + dir.string()).status == 0);
  const auto meta = io::read_json(dir / "semiwave.json");
  CHECK(meta.at("speed_law_mismatch").get<double>() <= 1e-9);
}

TEST_CASE("delta at or below the stable zero is a validation error") {
  const auto r = cli("semiwave --delta 0.9 --out " + scratch("bad").string());
  CHECK(r.status == 1);
  CHECK(r.output.find("delta must exceed 1") != std::string::npos);
  CHECK(cli("speed --d -1").status == 1);
  CHECK(cli("speed --f nonsense").status == 1);
  CHECK(cli("speed --bogus-flag").status == 1);
  CHECK(cli("semiwave --c fast").status == 1);
}

TEST_CASE("speed writes one JSON file and verify re-reads it") {
  const auto dir = scratch("speed");
  REQUIRE(cli("speed --delta 2 --out " + dir.string()).status == 0);
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
  const auto j = io::read_json(dir / "speed.json");
  CHECK(j.at("c_star").get<double>() == doctest::Approx(-0.893521949555033).epsilon(1e-10));
  CHECK(cli("verify --speed-json " + (dir / "speed.json").string() + " --out " + dir.string())
            .status == 0);
}

TEST_CASE("sweep over a range") {
  const auto dir = scratch("sweep");
  REQUIRE(cli("sweep --deltas 1.1:3:0.1 --out " + dir.string()).status == 0);
  const auto t = io::read_csv(dir / "sweep.csv");
  REQUIRE(t.rows.size() == 20);
  const auto is = t.column("retreat_speed");
  for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i][is] > t.rows[i - 1][is]);
  CHECK(cli("verify --sweep " + (dir / "sweep.csv").string() + " --out " + dir.string()).status ==
        0);
}

TEST_CASE("sweep towards delta = 1 decreases to zero") {
  const auto dir = scratch("sweep_small");
  REQUIRE(cli("sweep --deltas 1.0001,1.001,1.01 --out " + dir.string()).status == 0);
  const auto t = io::read_csv(dir / "sweep.csv");
  const auto is = t.column("retreat_speed");
  CHECK(t.rows[0][is] < t.rows[1][is]);
  CHECK(t.rows[1][is] < t.rows[2][is]);
  CHECK(t.rows[0][is] < 1e-3);
  CHECK(cli("sweep --deltas 2,1.5").status == 1);
}

TEST_CASE("simulate with zero horizon writes a single row") {
  const auto dir = scratch("sim0");
  REQUIRE(cli("simulate --T 0 --out " + dir.string()).status == 0);
  const auto rows = io::run_rows_from_csv(io::read_csv(dir / "run.csv"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].g == 0.0);
}

TEST_CASE("config file values apply unless overridden on the command line") {
  const auto dir = scratch("config");
  io::write_text(dir / "run.cfg", "delta = 3\nd = 0.5\n");
  REQUIRE(cli("speed --config " + (dir / "run.cfg").string() + " --out " + dir.string()).status ==
          0);
  auto j = io::read_json(dir / "speed.json");
  CHECK(j.at("delta").get<double>() == 3.0);
  CHECK(j.at("d").get<double>() == 0.5);
  REQUIRE(cli("speed --config " + (dir / "run.cfg").string() + " --delta 2.5 --out " +
              dir.string())
              .status == 0);
  j = io::read_json(dir / "speed.json");
  CHECK(j.at("delta").get<double>() == 2.5);
  CHECK(j.at("d").get<double>() == 0.5);

  io::write_text(dir / "bad.cfg", "delta = 3\nspeed = 1\n");
  const auto r = cli("speed --config " + (dir / "bad.cfg").string());
  CHECK(r.status == 1);
  CHECK(r.output.find("unknown key 'speed'") != std::string::npos);
}

TEST_CASE("simulate verifies a short traveling-state run and outputs are deterministic") {
  const auto a = scratch("sim_a");
  const auto b = scratch("sim_b");
  const std::string args = "simulate --u0 semiwave --T 1 --output-every 0.5 --verify --sandwich 0 ";
  REQUIRE(cli(args + "--out " + a.string()).status == 0);
  REQUIRE(cli(args + "--out " + b.string()).status == 0);
  for (const char* name : {"run.csv", "convergence.csv", "verify_report.json", "run.json"}) {
    CAPTURE(name);
    CHECK(io::read_text(a / name) == io::read_text(b / name));
  }
  const auto rep = io::read_json(a / "verify_report.json");
  CHECK(rep.at("passed").get<bool>());
  CHECK(rep.at("max_relative_speed_error").get<double>() <= 0.01);
}

TEST_CASE("verify exits with status 3 when a check fails") {
  const auto dir = scratch("verify_fail");
  REQUIRE(cli("simulate --T 0.5 --output-every 0.5 --N 400 --out " + dir.string()).status == 0);
  const auto r = cli("verify --run " + (dir / "run.csv").string() + " --out " + dir.string());
  CHECK(r.status == 3);
  CHECK(cli("verify --out " + dir.string()).status == 1);
}

TEST_CASE("simulate reports bound violations with status 2") {
  const auto dir = scratch("sim_cap");
  const auto r = cli("simulate --T 1 --speed-cap 0.6 --out " + dir.string());
  CHECK(r.status == 2);
  CHECK(r.output.find("bound_violation") != std::string::npos);
}

TEST_CASE("custom table initial data") {
  const auto dir = scratch("table");
  io::write_text(dir / "u0.csv", "y,u\n0,2\n2,1.1\n10,1\n");
  REQUIRE(cli("simulate --u0 custom_table --u0-table " + (dir / "u0.csv").string() +
              " --T 0.2 --output-every 0.1 --out " + dir.string())
              .status == 0);
  io::write_text(dir / "bad.csv", "y,u\n0,1.5\n2,1\n");
  CHECK(cli("simulate --u0 custom_table --u0-table " + (dir / "bad.csv").string() + " --T 0")
            .status == 1);
  CHECK(cli("simulate --u0 wiggly --T 0").status == 1);
}

TEST_CASE("sequences subcommand") {
  const auto dir = scratch("seq");
  REQUIRE(cli("sequences --n-max 20 --out " + dir.string()).status == 0);
  const auto t = io::read_csv(dir / "sequences.csv");
  CHECK(t.rows.size() == 21);
  const auto j = io::read_json(dir / "sequences.json");
  CHECK(j.at("M").get<int>() >= 10);
}
