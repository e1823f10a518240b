#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snntwin/hardware.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    const auto stamp =
        std::chrono::high_resolution_clock::now().time_since_epoch().count();
    fs::path d = fs::temp_directory_path() / ("snntwin_cli_" + std::to_string(stamp));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(SNNTWIN_CLI_PATH) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("cli: presets lists built-ins as JSON") {
  const auto r = run_cli("presets");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["models"].size() == 3);
  CHECK(j["hardware"].size() == 3);
  CHECK(j["hardware"][1]["name"] == "typical-neuromorphic");
}

TEST_CASE("cli: energy report for the typical preset") {
  const auto r = run_cli("energy --model typical --hw typical-neuromorphic");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.contains("e_snn_total_pj"));
  CHECK(j.contains("e_qnn_total_pj"));
  CHECK(j.contains("ratio"));
  CHECK(j["workload"]["T"] == 4);
  CHECK(j["workload"]["scenario"] == "average");
  CHECK(j["snn"]["terms"].contains("membrane-update"));
  CHECK(j["qnn"]["terms"].contains("clamping"));
}

TEST_CASE("cli: aggregated transmission flag routes to the compressed encoding") {
  const auto r = run_cli("energy --model typical --gamma 0.8 --snn-mode aggregated");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["snn"]["aggregated"] == true);
  // aggregated SNN data cost equals the QNN's at the same width and sparsity
  CHECK(j["snn"]["data_pj"] == j["qnn"]["data_pj"]);
}

TEST_CASE("cli: energy accepts a workload config file, flags override it") {
  const fs::path cfg = scratch_dir() / "workload.json";
  std::ofstream(cfg) << R"({"T": 7, "s_r": "0.05", "gamma": "0.8", "n_src": 1024,
                            "weight_bits": 4})";
  const auto r = run_cli("energy --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["workload"]["T"] == 7);
  CHECK(j["workload"]["n_src"] == 1024);

  const auto overridden = run_cli("energy --config " + cfg.string() + " --t 3");
  REQUIRE(overridden.exit_code == 0);
  CHECK(json::parse(overridden.out)["workload"]["T"] == 3);

  CHECK(run_cli("energy --config /does/not/exist.json").exit_code == 2);
}

TEST_CASE("cli: missing MAC entry exits 2 naming the widths") {
  auto hw = snntwin::builtin_profiles()[1];
  hw.name = "holey";
  hw.e_mac.erase({3, 8});
  const fs::path profile = scratch_dir() / "holey.json";
  std::ofstream(profile) << snntwin::to_json(hw).dump(2);

  const auto r = run_cli("energy --t 4 --weight-bits 8 --hw " + profile.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("activation_bits=3") != std::string::npos);
  CHECK(r.err.find("weight_bits=8") != std::string::npos);
}

TEST_CASE("cli: breakeven table over a window range") {
  const auto r = run_cli("breakeven --t 1 --t-max 8 --gamma 0.8 --hw typical-neuromorphic");
  REQUIRE(r.exit_code == 0);
  // header + 8 rows + annotation comments
  int rows = 0;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#' && line.rfind("hw,", 0) != 0) ++rows;
  CHECK(rows == 8);
  CHECK(r.out.find("# transmission threshold") != std::string::npos);
  CHECK(r.out.find("# breakeven spike rate spans") != std::string::npos);

  const auto rj = run_cli("breakeven --t 2 --gamma 0.8 --format json");
  REQUIRE(rj.exit_code == 0);
  const json j = json::parse(rj.out);
  CHECK(j["breakeven"][0]["status"] == "root");
  CHECK(j["annotations"].size() >= 1);
}

TEST_CASE("cli: breakeven reports infeasible configurations") {
  auto hw = snntwin::builtin_profiles()[0];
  hw.name = "free-mac";
  for (auto& [key, pj] : hw.e_mac) pj = 0;
  for (auto& [bits, pj] : hw.e_weight) pj = 0;
  const fs::path profile = scratch_dir() / "free-mac.json";
  std::ofstream(profile) << snntwin::to_json(hw).dump(2);

  const auto r = run_cli("breakeven --t 8 --gamma 0.5 --hw " + profile.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("infeasible") != std::string::npos);
}

TEST_CASE("cli: landscape is deterministic and complete") {
  const fs::path a = scratch_dir() / "landscape_a.csv";
  const fs::path b = scratch_dir() / "landscape_b.csv";
  REQUIRE(run_cli("landscape --out " + a.string()).exit_code == 0);
  REQUIRE(run_cli("landscape --out " + b.string()).exit_code == 0);
  const std::string csv_a = slurp(a);
  CHECK(csv_a == slurp(b));
  CHECK(std::count(csv_a.begin(), csv_a.end(), '\n') == 28);
  CHECK(csv_a.find(",false\n") != std::string::npos);  // the infeasible best-case cells
}

TEST_CASE("cli: sweep writes the grid and a breakeven companion") {
  const fs::path out = scratch_dir() / "sweep.csv";
  const auto r = run_cli("sweep --t-min 1 --t-max 4 --sr-max 0.2 --sr-step 0.1 --bits 8 "
                         "--n-list 64 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const std::string grid = slurp(out);
  // 4 windows x 1 bits x 1 fan-in x 3 rates
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 13);
  const fs::path companion = scratch_dir() / "sweep.breakeven.csv";
  REQUIRE(fs::exists(companion));
  const std::string table = slurp(companion);
  CHECK(std::count(table.begin(), table.end(), '\n') == 5);  // header + 4 windows
}

TEST_CASE("cli: verify is deterministic in the seed and reports violations") {
  const auto a = run_cli("verify --trials 300 --seed 42");
  const auto b = run_cli("verify --trials 300 --seed 42");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json ja = json::parse(a.out);
  CHECK(ja["passed"] == true);
  CHECK(ja["oracle_mismatches"] == 0);
  CHECK(ja["premise_violations"] == 0);  // budget 0.99 keeps the premise

  const auto forced = run_cli("verify --trials 300 --seed 42 --weight-budget 2.0");
  REQUIRE(forced.exit_code == 0);  // out-of-premise gaps are reported, not failures
  const json jf = json::parse(forced.out);
  CHECK(jf["premise_violations"].get<int>() > 0);
  CHECK(jf["passed"] == true);
}

TEST_CASE("cli: exit codes for bad invocations") {
  CHECK(run_cli("energy --t 0").exit_code == 2);
  CHECK(run_cli("energy --hw no-such-profile").exit_code == 2);
  CHECK(run_cli("energy --scenario sideways").exit_code == 2);
  CHECK(run_cli("nonsense-subcommand").exit_code == 2);
  // format / extension mismatch
  CHECK(run_cli("landscape --format json --out " + (scratch_dir() / "x.csv").string())
            .exit_code == 2);
  // unwritable output path
  CHECK(run_cli("landscape --out /nonexistent-dir/deep/file.csv").exit_code == 3);
  // best-case twin does not exist at s_r * T > 1
  CHECK(run_cli("energy --model high-performance --scenario best").exit_code == 2);
}
