#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "cli_runner.hpp"

using nlohmann::json;
using testing::run_cli;

namespace {

std::string data(const std::string& name) { return std::string("'") + ORBITLAB_TEST_DATA + "/" + name + "'"; }

std::string fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("orbitlab_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("census tables") {
  const auto r = run_cli("census --map " + data("z2.json") + " --n-max 8");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == "orbitlab.census/1");
  for (int n = 1; n <= 8; ++n) CHECK(j["census"]["rows"][n - 1]["P"] == (1 << n));
  CHECK(j["mobius_violations"].empty());

  const auto c = run_cli("census --map " + data("contraction.json") + " --n-max 8");
  REQUIRE(c.code == 0);
  for (const auto& row : json::parse(c.out)["census"]["rows"]) CHECK(row["P"] == 1);

  const auto s = run_cli("census --map " + data("parabolic.json") + " --n-max 3 --strict");
  CHECK(s.code == 3);
  const auto lax = run_cli("census --map " + data("parabolic.json") + " --n-max 3");
  CHECK(lax.code == 0);
  CHECK(json::parse(lax.out)["census"]["rows"][0]["flagged"] == true);
}

TEST_CASE("CSV output") {
  const std::string dir = fresh_dir("csv");
  const auto r = run_cli("census --map " + data("contraction.json") + " --n-max 2 --csv " + dir + "/c.csv");
  REQUIRE(r.code == 0);
  std::ifstream in(dir + "/c.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,P_n,Q_n,log_P_n_over_n");
}

TEST_CASE("exit codes") {
  CHECK(run_cli("sample --trials 0").code == 2);
  CHECK(run_cli("census --map /nonexistent.json --n-max 2").code == 2);
  CHECK(run_cli("census --n-max 2").code == 2);
  CHECK(run_cli("bogus").code == 2);
  CHECK(run_cli("demand --sequence n^n --n1 3").code == 4);
  CHECK(run_cli("eliminate --degree 3").code == 4);
  CHECK(run_cli("split --order 1 --count 100").code == 4);
  CHECK(run_cli("census --map " + data("z2.json") + " --n-max 9").code == 0);  // row 9 unavailable, not fatal
}

TEST_CASE("sample is deterministic with zero hits") {
  const std::string args = "sample --n 1 --degree 2 --k-max 4 --trials 200 --seed 7";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  for (const auto& h : j["report"]["lambda0_hits"]) CHECK(h["orbit_hits"] == 0);
  for (const auto& c : j["report"]["controls"]) CHECK(c["passed"] == true);
}

TEST_CASE("lemma2, split, eliminate") {
  const auto l = run_cli("lemma2 --n 1 --degree 2 --period 2");
  REQUIRE(l.code == 0);
  const json lj = json::parse(l.out);
  CHECK(lj["found"] == 4);
  CHECK(lj["all_hyperbolic"] == true);

  const auto s = run_cli("split --order 1 --count 12");
  REQUIRE(s.code == 0);
  CHECK(json::parse(s.out)["plan"]["certified_count"] == 12);

  const auto e = run_cli("eliminate --degree 2 --period 1 --lambda0 1,0");
  REQUIRE(e.code == 0);
  const json ej = json::parse(e.out);
  CHECK(ej["slice"]["real"]["text"] != "0");
  CHECK(ej["slice"]["certificate_valid"] == true);
}

TEST_CASE("run log and replay") {
  const std::string dir = fresh_dir("replay");
  REQUIRE(run_cli("census --map " + data("z2.json") + " --n-max 4", dir).code == 0);
  REQUIRE(run_cli("sample --trials 20 --seed 3", dir).code == 0);
  REQUIRE(run_cli("solve --map " + data("square2d.json") + " --period 1 --seed-random 200 --rng-seed 4", dir).code == 0);
  REQUIRE(run_cli("census --map " + data("parabolic.json") + " --n-max 2 --strict", dir).code == 3);

  std::ifstream in(dir + "/runs.jsonl");
  std::string line;
  int records = 0;
  while (std::getline(in, line)) {
    const json rec = json::parse(line);
    CHECK(rec["schema"] == "orbitlab.runrecord/1");
    CHECK(rec.contains("output_hash"));
    ++records;
  }
  REQUIRE(records == 4);
  for (int i = 0; i < records; ++i) {
    const auto r = run_cli("replay --record " + dir + "/runs.jsonl --index " + std::to_string(i));
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["match"] == true);
  }
}
