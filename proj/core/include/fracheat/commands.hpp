#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fracheat::cli {

// 0 success; 2 validation error; 3 non-convergence; 4 internal check failure
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 2;
inline constexpr int kNonConvergence = 3;
inline constexpr int kCheckFailure = 4;

struct CommandOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;  // --seed beats FRACHEAT_SEED
  int threads = 0;                             // 0 = leave default
};

int run_simulate_noise(const CommandOptions& opts);
int run_kernel_table(const CommandOptions& opts);
int run_verify_bounds(const CommandOptions& opts);
int run_solve(const CommandOptions& opts);
int run_fraccalc_selftest(const CommandOptions& opts);

}  // namespace fracheat::cli
