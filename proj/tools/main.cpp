#include <cstdint>
#include <iostream>

#include "CLI11.hpp"

#include "fracheat/commands.hpp"
#include "fracheat/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fracheat: two-medium fractional stochastic heat equation toolkit"};
  app.require_subcommand(1);

  fracheat::cli::CommandOptions opts;
  std::uint64_t seed_value = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "path to JSON config (or a run manifest)")
        ->required();
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--seed", seed_value, "override the master seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--threads", opts.threads, "worker thread count");
  };

  auto* simulate = app.add_subcommand("simulate-noise", "sample the noise ensemble");
  auto* table = app.add_subcommand("kernel-table", "tabulate the fundamental solution");
  auto* verify = app.add_subcommand("verify-bounds", "run the analytic-bound diagnostics");
  auto* solve = app.add_subcommand("solve", "Picard fixed-point solve of the mild equation");
  auto* selftest = app.add_subcommand("fraccalc-selftest", "fractional-calculus property suite");
  for (auto* sub : {simulate, table, verify, solve, selftest}) add_common(sub);

  CLI11_PARSE(app, argc, argv);
  if (seed_given) opts.seed_override = seed_value;

  try {
    if (simulate->parsed()) return fracheat::cli::run_simulate_noise(opts);
    if (table->parsed()) return fracheat::cli::run_kernel_table(opts);
    if (verify->parsed()) return fracheat::cli::run_verify_bounds(opts);
    if (solve->parsed()) return fracheat::cli::run_solve(opts);
    if (selftest->parsed()) return fracheat::cli::run_fraccalc_selftest(opts);
  } catch (const fracheat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return fracheat::cli::kValidationError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return fracheat::cli::kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fracheat::cli::kCheckFailure;
  }
  return fracheat::cli::kValidationError;
}
