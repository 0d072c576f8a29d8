#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "config_file.hpp"
#include "fbwave/error.hpp"
#include "fbwave/io.hpp"

using namespace fbwave;

TEST_CASE("numbers print with 17 significant digits and round trip") {
  for (double v : {0.1, -0.893521949555033, 1e-300, 123456789.123456789}) {
    CHECK(std::strtod(io::fmt(v).c_str(), nullptr) == v);
  }
  CHECK(io::fmt(0.1) == "0.10000000000000001");
}

TEST_CASE("run record CSV round trips") {
  RunRecord rec;
  rec.rows.push_back({0.0, 0.0, 0.5, 0.19, 1.0, 1.95});
  rec.rows.push_back({0.1, 0.05, 0.86, 0.02, 1.0, 1.92});
  const auto text = io::run_record_csv(rec);
  CHECK(text.rfind("t,g,g_prime,sup_profile_error,min_U,max_U\n", 0) == 0);
  const auto rows = io::run_rows_from_csv(io::parse_csv(text));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].g_prime == 0.86);
  CHECK(rows[1].max_U == 1.92);
}

TEST_CASE("CSV parsing rejects malformed input") {
  CHECK_THROWS_AS(io::parse_csv(""), ValidationError);
  CHECK_THROWS_AS(io::parse_csv("a,b\n1\n"), ValidationError);
  CHECK_THROWS_AS(io::parse_csv("a,b\n1,x\n"), ValidationError);
  const auto t = io::parse_csv("a,b\r\n1,nan\r\n\r\n");
  CHECK(t.rows.size() == 1);
  CHECK(std::isnan(t.rows[0][1]));
  CHECK_THROWS_AS(t.column("c"), ValidationError);
  CHECK_THROWS_AS(io::run_rows_from_csv(io::parse_csv(
                      "t,g,g_prime,sup_profile_error,min_U,max_U\n1,0,0,0,1,2\n1,0,0,0,1,2\n")),
                  ValidationError);
}

TEST_CASE("files and JSON round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "fbwave_io_test";
  std::filesystem::remove_all(dir);
  io::write_json(dir / "sub" / "x.json", {{"a", 1.5}, {"b", "text"}});
  const auto j = io::read_json(dir / "sub" / "x.json");
  CHECK(j.at("a").get<double>() == 1.5);
  io::write_text(dir / "bad.json", "{");
  CHECK_THROWS_AS(io::read_json(dir / "bad.json"), ValidationError);
  CHECK_THROWS_AS(io::read_text(dir / "missing.txt"), ValidationError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config files accept documented keys only") {
  const auto cfg = cli::parse_config("# comment\nd = 0.5\ndelta=3  # trailing\n\nN = 400\n"
                                     "predictor_corrector = yes\nreaction = logistic:r=2\n");
  CHECK(cli::config_number(cfg, "d") == 0.5);
  CHECK(cli::config_number(cfg, "delta") == 3.0);
  CHECK(cli::config_int(cfg, "N") == 400);
  CHECK(cli::config_bool(cfg, "predictor_corrector"));
  CHECK(cfg.at("reaction") == "logistic:r=2");
  CHECK_THROWS_AS(cli::parse_config("speed = 3\n"), ValidationError);
  CHECK_THROWS_AS(cli::parse_config("d 3\n"), ValidationError);
  CHECK_THROWS_AS(cli::parse_config("d =\n"), ValidationError);
  const auto bad = cli::parse_config("N = 3.5\nd = abc\npredictor_corrector = maybe\n");
  CHECK_THROWS_AS(cli::config_int(bad, "N"), ValidationError);
  CHECK_THROWS_AS(cli::config_number(bad, "d"), ValidationError);
  CHECK_THROWS_AS(cli::config_bool(bad, "predictor_corrector"), ValidationError);
}
