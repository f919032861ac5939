#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "fracheat/grid.hpp"
#include "fracheat/kernel.hpp"
#include "fracheat/noise.hpp"
#include "fracheat/solver.hpp"

namespace fracheat {

/// Configuration problems carry their own type so the CLI can map them to the
/// validation exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One flat, human-editable JSON config shared by every subcommand. Optional
/// fields are resolved to defaults before validation; to_json() emits the
/// fully resolved form used in manifests (and accepted back for replay).
struct RunConfig {
  // medium
  double a1 = 1.0, a2 = 1.0, rho1 = 1.0, rho2 = 1.0;
  // noise
  double hurst = 0.75;
  int truncation = 8;
  double lambda_exponent = 2.0;
  // equation
  double h1 = 0.0, h2 = 0.0;
  std::optional<double> sigma;  // default: midpoint of (1-H, 1/2)
  // grids
  double horizon = 1.0;
  int time_steps = 32;
  std::optional<double> half_width;  // default: Gaussian-tail rule
  int space_points = 33;
  // run controls
  std::uint64_t seed = 1;
  double tol = 1e-6;
  int p_max = 16;
  int quad_refine = 2;
  int space_refine = 0;
  bool allow_brownian = false;
  // command-specific
  double table_dt = 0.5;  // kernel-table
  int probes = 200;       // verify-bounds probes per check
  double delta = 0.5;
  double delta_prime = 0.4;

  static RunConfig from_json(const nlohmann::json& j);
  /// Accepts either a plain config or a run manifest (with a "config" key).
  static RunConfig from_file(const std::string& path);

  nlohmann::json to_json() const;  // resolved (defaults applied)

  void validate(const std::string& command) const;

  double resolved_sigma() const;
  double resolved_half_width() const;

  MediumParams medium() const { return MediumParams::create(a1, a2, rho1, rho2); }
  TimeGrid time_grid() const { return {horizon, time_steps}; }
  SpaceGrid space_grid() const { return {resolved_half_width(), space_points}; }
  NoiseSpec noise_spec() const;
  SolverConfig solver_config() const;
};

}  // namespace fracheat
