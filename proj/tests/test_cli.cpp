#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracheat/commands.hpp"
#include "fracheat/config.hpp"
#include "fracheat/manifest.hpp"

using namespace fracheat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("fracheat_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const nlohmann::json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream out(p);
  out << j.dump(2);
  return p;
}

nlohmann::json base_config() {
  return {
      {"medium", {{"a1", 1.0}, {"a2", 1.0}, {"rho1", 1.0}, {"rho2", 1.0}}},
      {"hurst", 0.75},
      {"T", 1.0},
      {"N", 12},
      {"M", 13},
      {"J", 2},
      {"seed", 2024},
      {"h1", 0.0},
      {"h2", 1.0},
      {"L", 2.0},
      {"tol", 1e-6},
      {"p_max", 8},
  };
}

}  // namespace

TEST_CASE("config: missing keys are named, manifests round-trip") {
  const auto dir = temp_dir("config");
  auto j = base_config();
  j.erase("hurst");
  const auto p = write_config(dir, j);
  try {
    RunConfig::from_file(p.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("hurst") != std::string::npos);
  }

  const auto cfg = RunConfig::from_json(base_config());
  const auto resolved = cfg.to_json();
  const auto again = RunConfig::from_json(resolved);
  CHECK(again.to_json() == resolved);
  CHECK(resolved.contains("sigma"));  // defaults resolved
  fs::remove_all(dir);
}

TEST_CASE("config validation rules") {
  auto cfg = RunConfig::from_json(base_config());
  CHECK_NOTHROW(cfg.validate("solve"));

  cfg.hurst = 0.5;
  CHECK_THROWS_AS(cfg.validate("simulate-noise"), ConfigError);
  cfg.allow_brownian = true;
  CHECK_NOTHROW(cfg.validate("simulate-noise"));
  CHECK_THROWS_AS(cfg.validate("solve"), ConfigError);  // override is noise-only

  cfg = RunConfig::from_json(base_config());
  cfg.sigma = 0.1;
  CHECK_THROWS_AS(cfg.validate("solve"), ConfigError);
}

TEST_CASE("verify-bounds: malformed window is a per-check rejection") {
  const auto dir = temp_dir("reject");
  auto j = base_config();
  j["delta"] = 0.2;  // outside (1/3, 1): time-Holder and appendix checks reject
  j["probes"] = 5;
  const auto cfg_path = write_config(dir, j);
  cli::CommandOptions opts;
  opts.config_path = cfg_path.string();
  opts.out_dir = (dir / "out").string();
  CHECK(cli::run_verify_bounds(opts) == cli::kValidationError);
  const auto report = nlohmann::json::parse(slurp(dir / "out" / "bounds_report.json"));
  CHECK_FALSE(report.at("all_pass").get<bool>());
  int rejected = 0;
  for (const auto& rec : report.at("checks"))
    if (rec.contains("note") &&
        rec.at("note").get<std::string>().find("rejected") != std::string::npos)
      ++rejected;
  CHECK(rejected >= 2);
  fs::remove_all(dir);
}

TEST_CASE("simulate-noise is deterministic and digest-complete") {
  const auto dir = temp_dir("noise");
  const auto cfg_path = write_config(dir, base_config());

  cli::CommandOptions opts;
  opts.config_path = cfg_path.string();
  opts.out_dir = (dir / "run1").string();
  CHECK(cli::run_simulate_noise(opts) == cli::kOk);
  opts.out_dir = (dir / "run2").string();
  CHECK(cli::run_simulate_noise(opts) == cli::kOk);

  for (const char* name : {"component_001.csv", "component_002.csv"})
    CHECK(slurp(dir / "run1" / name) == slurp(dir / "run2" / name));

  // manifest digests match emitted bytes
  const auto manifest = nlohmann::json::parse(slurp(dir / "run1" / "manifest.json"));
  for (const auto& [name, digest] : manifest.at("outputs").items())
    CHECK(file_digest((dir / "run1" / name).string()) == digest.get<std::string>());

  // a different seed changes the paths
  opts.out_dir = (dir / "run3").string();
  opts.seed_override = 999;
  CHECK(cli::run_simulate_noise(opts) == cli::kOk);
  CHECK(slurp(dir / "run1" / "component_001.csv") !=
        slurp(dir / "run3" / "component_001.csv"));
  fs::remove_all(dir);
}

TEST_CASE("solve: replay from manifest and thread independence") {
  const auto dir = temp_dir("solve");
  auto j = base_config();
  j["h1"] = 0.5;
  const auto cfg_path = write_config(dir, j);

  cli::CommandOptions opts;
  opts.config_path = cfg_path.string();
  opts.out_dir = (dir / "run1").string();
  opts.threads = 1;
  CHECK(cli::run_solve(opts) == cli::kOk);

  // replay driven by the manifest itself, different thread count
  cli::CommandOptions replay;
  replay.config_path = (dir / "run1" / "manifest.json").string();
  replay.out_dir = (dir / "run2").string();
  replay.threads = 4;
  CHECK(cli::run_solve(replay) == cli::kOk);

  for (const char* name :
       {"solution.csv", "diagnostics.json", "component_001.csv", "component_002.csv"})
    CHECK(slurp(dir / "run1" / name) == slurp(dir / "run2" / name));
  fs::remove_all(dir);
}

TEST_CASE("solve: non-convergence exits 3 and still writes diagnostics") {
  const auto dir = temp_dir("noconv");
  auto j = base_config();
  j["h1"] = 0.5;
  j["tol"] = 1e-16;
  j["p_max"] = 2;
  const auto cfg_path = write_config(dir, j);

  cli::CommandOptions opts;
  opts.config_path = cfg_path.string();
  opts.out_dir = (dir / "out").string();
  CHECK(cli::run_solve(opts) == cli::kNonConvergence);
  CHECK(fs::exists(dir / "out" / "diagnostics.json"));
  const auto diag = nlohmann::json::parse(slurp(dir / "out" / "diagnostics.json"));
  CHECK(diag.at("converged").get<bool>() == false);
  CHECK(diag.at("differences").size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("kernel-table and fraccalc-selftest") {
  const auto dir = temp_dir("table");
  const auto cfg_path = write_config(dir, base_config());
  cli::CommandOptions opts;
  opts.config_path = cfg_path.string();
  opts.out_dir = (dir / "table").string();
  CHECK(cli::run_kernel_table(opts) == cli::kOk);
  std::ifstream in(dir / "table" / "kernel_table.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,y,G");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 13 * 13);

  opts.out_dir = (dir / "selftest").string();
  CHECK(cli::run_fraccalc_selftest(opts) == cli::kOk);
  const auto rep = nlohmann::json::parse(slurp(dir / "selftest" / "fraccalc_report.json"));
  CHECK(rep.at("all_pass").get<bool>());
  fs::remove_all(dir);
}

#ifdef FRACHEAT_CLI_PATH
TEST_CASE("binary: exit codes and flag handling") {
  const auto dir = temp_dir("binary");
  const auto cfg_path = write_config(dir, base_config());
  const std::string exe = FRACHEAT_CLI_PATH;
  auto run = [&](const std::string& args) {
    const std::string cmd = exe + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };

  CHECK(run("simulate-noise --config " + cfg_path.string() + " --out " +
            (dir / "n").string()) == cli::kOk);
  CHECK(run("simulate-noise --config " + (dir / "missing.json").string() + " --out " +
            (dir / "n2").string()) == cli::kValidationError);

  // missing required key
  auto broken = base_config();
  broken.erase("seed");
  const auto broken_path = dir / "broken.json";
  std::ofstream(broken_path) << broken.dump();
  CHECK(run("simulate-noise --config " + broken_path.string() + " --out " +
            (dir / "n3").string()) == cli::kValidationError);

  // Brownian smoke config requires the explicit override
  auto brown = base_config();
  brown["hurst"] = 0.5;
  const auto brown_path = dir / "brown.json";
  std::ofstream(brown_path) << brown.dump();
  CHECK(run("simulate-noise --config " + brown_path.string() + " --out " +
            (dir / "n4").string()) == cli::kValidationError);
  brown["allow_brownian"] = true;
  std::ofstream(brown_path) << brown.dump();
  CHECK(run("simulate-noise --config " + brown_path.string() + " --out " +
            (dir / "n5").string()) == cli::kOk);
  fs::remove_all(dir);
}
#endif
