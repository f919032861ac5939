#include "fracheat/config.hpp"

#include <cmath>
#include <fstream>

namespace fracheat {

namespace {

template <typename T>
T require(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing required config key: " + key);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key has wrong type: " + key);
  }
}

template <typename T>
void maybe(const nlohmann::json& j, const std::string& key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key has wrong type: " + key);
  }
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  const auto medium = require<nlohmann::json>(j, "medium");
  c.a1 = require<double>(medium, "a1");
  c.a2 = require<double>(medium, "a2");
  c.rho1 = require<double>(medium, "rho1");
  c.rho2 = require<double>(medium, "rho2");
  c.hurst = require<double>(j, "hurst");
  c.horizon = require<double>(j, "T");
  c.time_steps = require<int>(j, "N");
  c.space_points = require<int>(j, "M");
  c.truncation = require<int>(j, "J");
  c.seed = require<std::uint64_t>(j, "seed");

  maybe(j, "h1", c.h1);
  maybe(j, "h2", c.h2);
  if (j.contains("sigma")) c.sigma = require<double>(j, "sigma");
  if (j.contains("L")) c.half_width = require<double>(j, "L");
  maybe(j, "lambda_exponent", c.lambda_exponent);
  maybe(j, "tol", c.tol);
  maybe(j, "p_max", c.p_max);
  maybe(j, "quad_refine", c.quad_refine);
  maybe(j, "space_refine", c.space_refine);
  maybe(j, "allow_brownian", c.allow_brownian);
  maybe(j, "table_dt", c.table_dt);
  maybe(j, "probes", c.probes);
  maybe(j, "delta", c.delta);
  maybe(j, "delta_prime", c.delta_prime);
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  // run manifests embed the resolved config; accept them directly for replay
  if (j.contains("config") && j.at("config").is_object())
    return from_json(j.at("config"));
  return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["medium"] = {{"a1", a1}, {"a2", a2}, {"rho1", rho1}, {"rho2", rho2}};
  j["hurst"] = hurst;
  j["T"] = horizon;
  j["N"] = time_steps;
  j["M"] = space_points;
  j["J"] = truncation;
  j["seed"] = seed;
  j["h1"] = h1;
  j["h2"] = h2;
  j["sigma"] = resolved_sigma();
  j["L"] = resolved_half_width();
  j["lambda_exponent"] = lambda_exponent;
  j["tol"] = tol;
  j["p_max"] = p_max;
  j["quad_refine"] = quad_refine;
  j["space_refine"] = space_refine;
  j["allow_brownian"] = allow_brownian;
  j["table_dt"] = table_dt;
  j["probes"] = probes;
  j["delta"] = delta;
  j["delta_prime"] = delta_prime;
  return j;
}

double RunConfig::resolved_sigma() const {
  if (sigma) return *sigma;
  return SolverConfig::default_sigma(hurst);
}

double RunConfig::resolved_half_width() const {
  if (half_width) return *half_width;
  // Gaussian-tail rule: exp(-L^2 / (2 T a_max)) < 1e-12 relative to the peak
  const double a_max = std::max(a1, a2);
  const double L = std::sqrt(2.0 * horizon * a_max * std::log(1e12));
  return std::ceil(L * 2.0) / 2.0;  // round up to 0.5
}

NoiseSpec RunConfig::noise_spec() const {
  NoiseSpec spec;
  spec.truncation = truncation;
  spec.hurst = hurst;
  spec.lambda_exponent = lambda_exponent;
  spec.half_width = resolved_half_width();
  return spec;
}

SolverConfig RunConfig::solver_config() const {
  SolverConfig cfg;
  cfg.sigma = resolved_sigma();
  cfg.h = {h1, h2};
  cfg.tol = tol;
  cfg.max_iterations = p_max;
  cfg.medium = medium();
  cfg.time = time_grid();
  cfg.space = space_grid();
  cfg.noise = noise_spec();
  cfg.quad_refine = quad_refine;
  cfg.space_refine = space_refine;
  return cfg;
}

void RunConfig::validate(const std::string& command) const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(a1 > 0.0 && a2 > 0.0 && rho1 > 0.0 && rho2 > 0.0))
    fail("medium coefficients a1,a2,rho1,rho2 must all be positive");
  if (!(horizon > 0.0)) fail("T must be positive");
  if (time_steps < 1) fail("N must be >= 1");
  if (space_points < 2) fail("M must be >= 2");
  if (truncation < 1) fail("J must be >= 1");
  if (!(lambda_exponent > 1.0)) fail("lambda_exponent must exceed 1");
  if (!(tol > 0.0)) fail("tol must be positive");
  if (p_max < 1) fail("p_max must be >= 1");
  if (quad_refine < 1) fail("quad_refine must be >= 1");

  const bool hurst_in_window = hurst > 0.5 && hurst < 1.0;
  if (!hurst_in_window) {
    const bool overridable = command == "simulate-noise" && allow_brownian &&
                             hurst > 0.0 && hurst < 1.0;
    if (!overridable)
      fail("hurst must lie in (1/2, 1); set allow_brownian for simulate-noise smoke runs");
  }

  const bool needs_sigma = command == "solve" || command == "verify-bounds" ||
                           command == "fraccalc-selftest";
  if (needs_sigma && hurst_in_window) {
    const double s = resolved_sigma();
    if (!(s > 1.0 - hurst && s < 0.5)) fail("sigma must lie in (1-H, 1/2)");
  }
  if (command == "kernel-table" && !(table_dt > 0.0)) fail("table_dt must be positive");
  // delta / delta_prime windows are enforced per check so a malformed window
  // yields a rejection record in the report rather than aborting the run
  if (command == "verify-bounds" && probes < 1) fail("probes must be >= 1");
}

}  // namespace fracheat
