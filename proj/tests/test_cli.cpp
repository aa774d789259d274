// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks that drive the installed command line binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "knapqaoa/knapsack_io.hpp"
#include "knapqaoa/statevector.hpp"
#include "knapqaoa/uc_io.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return KNAPQAOA_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "knapqaoa_cli_tests";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("gen writes loadable instance files for both families") {
  const auto dir = work_dir();
  const auto knap_file = dir / "gen_isc.txt";
  REQUIRE(run_cli("gen --family isc --n 20 --seed 3 --out " + knap_file.string()) == 0);
  const auto inst = knapqaoa::knap::load_instance(knap_file);
  CHECK(inst.size() == 20);

  const auto uc_file = dir / "gen_uc.txt";
  REQUIRE(run_cli("gen --family uc --n 10 --seed 3 --out " + uc_file.string()) == 0);
  const auto uc_inst = knapqaoa::uc::load_uc_instance(uc_file);
  CHECK(uc_inst.size() == 10);
}

TEST_CASE("solve produces a metrics file with a proven optimum") {
  const auto dir = work_dir();
  const auto out = dir / "solve_run";
  fs::remove_all(out);
  REQUIRE(run_cli("solve --method dp --n 30 --instance-seed 5 --out " + out.string()) == 0);
  const auto metrics = nlohmann::json::parse(slurp(out / "metrics.json"));
  CHECK(metrics.at("method") == "dp");
  CHECK(metrics.at("baselines").contains("exact"));
}

TEST_CASE("uc-scan emits the curve csv") {
  const auto dir = work_dir();
  const auto out = dir / "scan_run";
  fs::remove_all(out);
  REQUIRE(run_cli("uc-scan --n 6 --instance-seed 2 --points 40 --out " + out.string()) == 0);
  const auto csv = slurp(out / "scan.csv");
  CHECK(csv.rfind("D,cost,feasible", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 41);
}

TEST_CASE("qaoa-run samples a fixed-parameter circuit") {
  const auto dir = work_dir();
  const auto out = dir / "qaoa_run";
  fs::remove_all(out);
  REQUIRE(run_cli("qaoa-run --n 10 --instance-seed 4 --seed 9 --shots 2000 "
                  "--gamma 0.001 --beta 0.4 --out " +
                  out.string()) == 0);
  const auto samples = knapqaoa::sim::SampleSet::from_csv(slurp(out / "samples.csv"));
  CHECK(samples.shots == 2000);
  const auto metrics = nlohmann::json::parse(slurp(out / "metrics.json"));
  CHECK(metrics.at("valid_ratio").is_number());
}

TEST_CASE("qaoa-grid writes heatmap csv and svg with consistent red dots") {
  const auto dir = work_dir();
  const auto out = dir / "grid_run";
  fs::remove_all(out);
  REQUIRE(run_cli("qaoa-grid --n 8 --instance-seed 6 --seed 2 --gammas 6 --betas 5 "
                  "--exact --shots 500 --out " +
                  out.string()) == 0);
  const auto csv = slurp(out / "heatmap.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 31);  // header + 30 cells
  const auto svg = slurp(out / "heatmap.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("argmax-star") != std::string::npos);
}

TEST_CASE("report replays a manifest byte-for-byte") {
  const auto dir = work_dir();
  const auto out = dir / "replay_src";
  const auto replayed = dir / "replay_dst";
  fs::remove_all(out);
  fs::remove_all(replayed);
  REQUIRE(run_cli("qaoa-run --n 8 --instance-seed 11 --seed 31 --shots 1000 "
                  "--gamma 0.002 --beta 0.7 --out " +
                  out.string()) == 0);
  REQUIRE(run_cli("report --replay " + (out / "manifest.json").string() + " --out " +
                  replayed.string()) == 0);
  CHECK(slurp(out / "metrics.json") == slurp(replayed / "metrics.json"));
  CHECK(slurp(out / "samples.csv") == slurp(replayed / "samples.csv"));
}

TEST_CASE("report recomputes metrics from persisted artifacts") {
  const auto dir = work_dir();
  const auto out = dir / "rescore_run";
  fs::remove_all(out);
  REQUIRE(run_cli("qaoa-run --n 8 --instance-seed 12 --seed 5 --shots 1000 "
                  "--gamma 0.001 --beta 0.3 --out " +
                  out.string()) == 0);
  const std::string cmd = std::string(cli_path()) + " report --samples " +
                          (out / "samples.csv").string() + " --instance " +
                          (out / "instance.txt").string() + " > " +
                          (dir / "rescore.json").string() + " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const auto text = slurp(dir / "rescore.json");
  const auto recomputed = nlohmann::json::parse(text);
  const auto original = nlohmann::json::parse(slurp(out / "metrics.json"));
  CHECK(recomputed.at("valid_ratio").get<double>() ==
        doctest::Approx(original.at("valid_ratio").get<double>()));
  CHECK(recomputed.at("best_value").get<double>() ==
        doctest::Approx(original.at("best_value").get<double>()));
}

TEST_CASE("bad invocations fail with a nonzero exit") {
  CHECK(run_cli("solve --method nosuch") != 0);
  CHECK(run_cli("report") != 0);
  CHECK(run_cli("") != 0);
}
