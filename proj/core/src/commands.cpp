#include "fracheat/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fracheat/config.hpp"
#include "fracheat/csv.hpp"
#include "fracheat/manifest.hpp"
#include "fracheat/parallel.hpp"

namespace fracheat::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

RunConfig load_config(const CommandOptions& opts, const std::string& command) {
  if (opts.config_path.empty()) throw ConfigError("--config is required");
  RunConfig cfg = RunConfig::from_file(opts.config_path);
  if (const char* env = std::getenv("FRACHEAT_SEED"))
    cfg.seed = std::strtoull(env, nullptr, 10);
  if (opts.seed_override) cfg.seed = *opts.seed_override;
  if (opts.threads > 0) set_thread_count(opts.threads);
  cfg.validate(command);
  return cfg;
}

double elapsed_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

nlohmann::json record_json(const CheckRecord& rec) {
  nlohmann::json j;
  j["name"] = rec.name;
  j["probes"] = rec.probes;
  j["sup_ratio"] = rec.sup_ratio;
  j["pass"] = rec.pass;
  if (!rec.note.empty()) j["note"] = rec.note;
  return j;
}

struct CheckRunner {
  std::vector<CheckRecord> records;
  bool any_failed = false;
  bool any_rejected = false;

  template <typename F>
  void run(const std::string& name, F&& f) {
    try {
      CheckRecord rec = f();
      if (!rec.pass) any_failed = true;
      records.push_back(std::move(rec));
    } catch (const std::invalid_argument& e) {
      records.push_back({name, 0, 0.0, false, std::string("rejected: ") + e.what()});
      any_rejected = true;
    } catch (const std::exception& e) {
      records.push_back({name, 0, 0.0, false, std::string("crashed: ") + e.what()});
      any_failed = true;
    }
  }

  int write_report(const std::string& path, const nlohmann::json& header) const {
    nlohmann::json j = header;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& rec : records) {
      checks.push_back(record_json(rec));
      std::cout << (rec.pass ? "[PASS] " : "[FAIL] ") << rec.name
                << "  ratio=" << rec.sup_ratio
                << (rec.note.empty() ? "" : "  (" + rec.note + ")") << '\n';
    }
    j["checks"] = checks;
    j["all_pass"] = !any_failed && !any_rejected;
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << '\n';
    if (any_rejected) return kValidationError;
    if (any_failed) return kCheckFailure;
    return kOk;
  }
};

}  // namespace

int run_simulate_noise(const CommandOptions& opts) {
  const auto t0 = Clock::now();
  const RunConfig cfg = load_config(opts, "simulate-noise");
  const auto ens = NoiseEnsemble::create(cfg.noise_spec(), cfg.time_grid(), cfg.seed,
                                         cfg.allow_brownian);
  const auto files = ens.write_csv_bundle(opts.out_dir);
  RunManifest manifest("simulate-noise", cfg.to_json(), cfg.seed);
  for (const auto& f : files) manifest.add_output(f);
  manifest.set_elapsed(elapsed_since(t0));
  manifest.write(opts.out_dir);
  std::cout << "wrote " << files.size() << " files to " << opts.out_dir << '\n';
  return kOk;
}

int run_kernel_table(const CommandOptions& opts) {
  const auto t0 = Clock::now();
  const RunConfig cfg = load_config(opts, "kernel-table");
  const auto medium = cfg.medium();
  const auto sg = cfg.space_grid();
  fs::create_directories(opts.out_dir);
  const std::string path = (fs::path(opts.out_dir) / "kernel_table.csv").string();
  CsvWriter csv(path, {"x", "y", "G"});
  for (int i = 0; i < sg.points(); ++i)
    for (int k = 0; k < sg.points(); ++k) {
      const double row[3] = {sg.node(i), sg.node(k),
                             G_eval(cfg.table_dt, sg.node(i), sg.node(k), medium)};
      csv.write_row(row);
    }
  csv.close();
  RunManifest manifest("kernel-table", cfg.to_json(), cfg.seed);
  manifest.add_output(path);
  manifest.set_elapsed(elapsed_since(t0));
  manifest.write(opts.out_dir);
  std::cout << "wrote " << path << '\n';
  return kOk;
}

int run_verify_bounds(const CommandOptions& opts) {
  const RunConfig cfg = load_config(opts, "verify-bounds");
  const auto medium = cfg.medium();
  const auto tg = cfg.time_grid();
  const auto sg = cfg.space_grid();
  fs::create_directories(opts.out_dir);

  CheckRunner runner;
  const std::vector<double> y_probes = {0.0, 0.3, -0.5, 1.0};

  runner.run("pointwise_envelope",
             [&] { return lemma1_pointwise_check(10000, cfg.seed, medium); });
  runner.run("mass_bound", [&] {
    CheckRecord worst;
    for (double dt : {0.01, 0.1, 0.5}) {
      auto rec = mass_bound_check(dt, y_probes, medium);
      if (rec.sup_ratio >= worst.sup_ratio) {
        worst = rec;
        worst.note = "worst at dt=" + format_full(dt);
      }
      if (!rec.pass) worst.pass = false;
    }
    worst.probes = 3 * static_cast<int>(y_probes.size());
    return worst;
  });
  for (double eta : {0.5, 1.0}) {
    runner.run("eta_integral_dt", [&] {
      auto rec = eta_integral_slope_dt(eta, y_probes, medium);
      rec.name += "_eta_" + format_full(eta);
      return rec;
    });
    runner.run("eta_integral_dtds", [&] {
      auto rec = eta_integral_slope_dtds(eta, y_probes, medium);
      rec.name += "_eta_" + format_full(eta);
      return rec;
    });
  }
  runner.run("time_holder_spread", [&] {
    double lo = 1e300, hi = 0.0;
    int count = 0;
    for (int k = 0; k < 6; ++k) {
      const double scale = std::pow(10.0, -1.0 + k / 5.0);
      auto rec = time_holder_check(0.5 * scale, 0.25 * scale, y_probes, cfg.delta, medium);
      lo = std::min(lo, rec.sup_ratio);
      hi = std::max(hi, rec.sup_ratio);
      count += rec.probes;
    }
    CheckRecord rec;
    rec.name = "time_holder_spread";
    rec.probes = count;
    rec.sup_ratio = hi / lo;
    rec.pass = std::isfinite(rec.sup_ratio) && rec.sup_ratio <= 10.0;
    rec.note = "max/min of empirical constant over one decade";
    return rec;
  });
  runner.run("double_increment_spread", [&] {
    double lo = 1e300, hi = 0.0;
    int count = 0;
    for (int k = 0; k < 6; ++k) {
      const double scale = std::pow(10.0, -1.0 + k / 5.0);
      auto rec = double_increment_check(0.1 * scale, 0.2 * scale, 0.4 * scale,
                                        0.8 * scale, y_probes, cfg.delta_prime, medium);
      lo = std::min(lo, rec.sup_ratio);
      hi = std::max(hi, rec.sup_ratio);
      count += rec.probes;
    }
    CheckRecord rec;
    rec.name = "double_increment_spread";
    rec.probes = count;
    rec.sup_ratio = hi / lo;
    rec.pass = std::isfinite(rec.sup_ratio) && rec.sup_ratio <= 10.0;
    return rec;
  });
  runner.run("pde_residual_order", [&] {
    double min_order = 1e300;
    const double h = 1e-3;
    int count = 0;
    for (double x : {-1.0, -0.5, 0.5, 1.0})
      for (double y : {-0.7, 0.4})
        for (double t : {0.3, 0.8}) {
          const double r1 = pde_residual(t, x, y, medium, h);
          const double r2 = pde_residual(t, x, y, medium, h / 2.0);
          if (r2 > 0.0) min_order = std::min(min_order, std::log2(r1 / r2));
          ++count;
        }
    CheckRecord rec;
    rec.name = "pde_residual_order";
    rec.probes = count;
    rec.sup_ratio = min_order;
    rec.pass = min_order >= 1.8;
    rec.note = "min convergence order under h-halving";
    return rec;
  });
  runner.run("interface", [&] {
    double worst_cont = 0.0, worst_flux = 0.0;
    for (double y : y_probes)
      for (double t : {0.1, 0.5, 1.0}) {
        auto [cont, flux] = interface_checks(t, y, medium);
        worst_cont = std::max(worst_cont, cont);
        worst_flux = std::max(worst_flux, flux);
      }
    CheckRecord rec;
    rec.name = "interface";
    rec.probes = static_cast<int>(y_probes.size()) * 3;
    rec.sup_ratio = std::max(worst_cont, worst_flux);
    rec.pass = worst_cont == 0.0 && worst_flux <= 1e-12;
    return rec;
  });
  runner.run("chapman_kolmogorov", [&] {
    double worst = 0.0;
    for (double x : {0.2, -0.6})
      for (double y : {0.4, -0.3})
        for (double t : {0.25, 0.5})
          worst = std::max(worst, chapman_kolmogorov_defect(t, t, x, y, medium));
    CheckRecord rec;
    rec.name = "chapman_kolmogorov";
    rec.probes = 8;
    rec.sup_ratio = worst;
    rec.pass = worst <= 1e-4;
    return rec;
  });
  runner.run("detailed_balance",
             [&] { return detailed_balance_check(2000, cfg.seed + 1, medium); });
  runner.run("kernel_positivity",
             [&] { return positivity_check(2000, cfg.seed + 2, medium); });

  // fractional-calculus majorant
  runner.run("gls_majorant", [&] {
    const int n = 257;
    double sup = 0.0;
    bool ok = true;
    for (double s : {0.25, 0.4}) {
      GridFunction phi{0.0, 1.0, std::vector<double>(n)};
      GridFunction psi{0.0, 1.0, std::vector<double>(n)};
      for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / (n - 1);
        phi.values[i] = 1.0 + 0.5 * x * x;
        psi.values[i] = x - 0.25 * x * x;
      }
      const double lhs = std::abs(gls_integral(phi, psi, FracOrder(s)));
      const double rhs = gls_bound_rhs(phi, psi, FracOrder(s));
      sup = std::max(sup, lhs / rhs);
      ok = ok && lhs <= gls_bound_safety() * rhs;
    }
    CheckRecord rec;
    rec.name = "gls_majorant";
    rec.probes = 2;
    rec.sup_ratio = sup;
    rec.pass = ok;
    return rec;
  });

  // stochastic-integral inequality and the appendix suite
  const auto ens = NoiseEnsemble::create(cfg.noise_spec(), tg, cfg.seed);
  runner.run("stochastic_integral_bound", [&] {
    const double sigma = cfg.resolved_sigma();
    auto F = [&](int j, int s_idx, int x_idx) {
      const double t = tg.node(s_idx);
      const double x = sg.node(x_idx);
      return (1.0 + t) * std::exp(-x * x) * basis_eval(j, x, sg.half_width());
    };
    return ineg_check(F, tg.steps(), ens, sigma, sg);
  });

  {
    SolverConfig scfg = cfg.solver_config();
    if (scfg.h.h1 == 0.0 && scfg.h.h2 == 0.0) scfg.h = {0.5, 1.0};
    SolverWorkspace ws(scfg, ens);
    const auto u = random_smooth_field(tg, sg, cfg.seed + 11);
    const auto v = random_smooth_field(tg, sg, cfg.seed + 12);
    try {
      auto records = appendix_bound_suite(ws, u, v, cfg.probes, cfg.seed + 13,
                                          cfg.delta, cfg.delta_prime);
      for (auto& rec : records) {
        runner.records.push_back(rec);
        if (!rec.pass) runner.any_failed = true;
      }
    } catch (const std::invalid_argument& e) {
      runner.records.push_back(
          {"appendix_suite", 0, 0.0, false, std::string("rejected: ") + e.what()});
      runner.any_rejected = true;
    } catch (const std::exception& e) {
      runner.records.push_back(
          {"appendix_suite", 0, 0.0, false, std::string("crashed: ") + e.what()});
      runner.any_failed = true;
    }
  }

  nlohmann::json header;
  header["version"] = kVersion;
  header["command"] = "verify-bounds";
  header["config"] = cfg.to_json();
  const std::string report = (fs::path(opts.out_dir) / "bounds_report.json").string();
  const int code = runner.write_report(report, header);
  RunManifest manifest("verify-bounds", cfg.to_json(), cfg.seed);
  manifest.add_output(report);
  manifest.write(opts.out_dir);
  std::cout << "report: " << report << '\n';
  return code;
}

int run_solve(const CommandOptions& opts) {
  const auto t0 = Clock::now();
  const RunConfig cfg = load_config(opts, "solve");
  const SolverConfig scfg = cfg.solver_config();
  const auto ens = NoiseEnsemble::create(scfg.noise, scfg.time, cfg.seed);
  const auto result = picard_solve(scfg, ens);

  fs::create_directories(opts.out_dir);
  const std::string sol_path = (fs::path(opts.out_dir) / "solution.csv").string();
  {
    CsvWriter csv(sol_path, {"t", "x", "u"});
    const auto& u = result.solution;
    for (int i = 0; i <= scfg.time.steps(); ++i)
      for (int k = 0; k < scfg.space.points(); ++k) {
        const double row[3] = {scfg.time.node(i), scfg.space.node(k), u.at(i, k)};
        csv.write_row(row);
      }
  }

  const std::string diag_path = (fs::path(opts.out_dir) / "diagnostics.json").string();
  {
    const auto& d = result.diagnostics;
    nlohmann::json j;
    j["differences"] = d.differences;
    j["envelope"] = d.envelope;
    j["fitted_c"] = d.fitted_c;
    j["residual"] = d.residual;
    j["xi"] = d.xi;
    j["iterations"] = d.iterations;
    j["converged"] = d.converged;
    std::ofstream out(diag_path, std::ios::binary);
    out << j.dump(2) << '\n';
  }

  auto noise_files = ens.write_csv_bundle(opts.out_dir);

  RunManifest manifest("solve", cfg.to_json(), cfg.seed);
  manifest.add_output(sol_path);
  manifest.add_output(diag_path);
  for (const auto& f : noise_files) manifest.add_output(f);
  manifest.set_elapsed(elapsed_since(t0));
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& p : ens.paths) seeds.push_back(p.seed);
  manifest.set_extra("component_seeds", seeds);
  manifest.write(opts.out_dir);

  std::cout << (result.diagnostics.converged ? "converged" : "NOT converged")
            << " after " << result.diagnostics.iterations
            << " iterations, residual " << result.diagnostics.residual << '\n';
  return result.diagnostics.converged ? kOk : kNonConvergence;
}

int run_fraccalc_selftest(const CommandOptions& opts) {
  const RunConfig cfg = load_config(opts, "fraccalc-selftest");
  fs::create_directories(opts.out_dir);
  CheckRunner runner;
  const int n = 513;
  auto sample = [&](auto&& f) {
    GridFunction g{0.0, 1.0, std::vector<double>(n)};
    for (int i = 0; i < n; ++i) g.values[i] = f(static_cast<double>(i) / (n - 1));
    return g;
  };

  runner.run("power_rule_integral", [&] {
    const auto one = sample([](double) { return 1.0; });
    const auto out = rl_integral_left(one, FracOrder(0.5));
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = out.node(i);
      worst = std::max(worst, std::abs(out.values[i] - 2.0 * std::sqrt(x / M_PI)));
    }
    CheckRecord rec{"power_rule_integral", n, worst, worst <= 1e-6, ""};
    return rec;
  });
  runner.run("power_rule_derivative", [&] {
    const auto lin = sample([](double x) { return x; });
    const auto out = rl_deriv_left(lin, FracOrder(0.5));
    double worst = 0.0;
    for (int i = 1; i < n; ++i) {
      const double x = out.node(i);
      worst = std::max(worst,
                       std::abs(out.values[i] - std::sqrt(x) / std::tgamma(1.5)));
    }
    CheckRecord rec{"power_rule_derivative", n, worst, worst <= 1e-6, ""};
    return rec;
  });
  runner.run("stieltjes_increment", [&] {
    const auto one = sample([](double) { return 1.0; });
    double worst = 0.0;
    for (double s : {0.2, 0.3, 0.4}) {
      const auto psi = sample([](double x) { return x * x; });
      const double val = gls_integral(one, psi, FracOrder(s));
      worst = std::max(worst, std::abs(val - 1.0));
    }
    CheckRecord rec{"stieltjes_increment", 3, worst, worst <= 1e-4, ""};
    return rec;
  });
  runner.run("sigma_independence", [&] {
    const auto phi = sample([](double x) { return 1.0 + x - 0.5 * x * x; });
    const auto psi = sample([](double x) { return x + 0.25 * x * x * x; });
    double lo = 1e300, hi = -1e300;
    for (double s : {0.2, 0.3, 0.4}) {
      const double val = gls_integral(phi, psi, FracOrder(s));
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
    CheckRecord rec{"sigma_independence", 3, hi - lo, (hi - lo) <= 1e-3, ""};
    return rec;
  });
  runner.run("inversion", [&] {
    const auto phi = sample([](double x) { return std::sin(2.0 * x) + 0.3 * x; });
    const auto integ = rl_integral_left(phi, FracOrder(0.4));
    const auto back = rl_deriv_left(integ, FracOrder(0.4));
    double worst = 0.0;
    for (int i = 1; i < n; ++i)
      worst = std::max(worst, std::abs(back.values[i] - phi.values[i]));
    CheckRecord rec{"inversion", n, worst, worst <= 1e-3, ""};
    return rec;
  });
  runner.run("gls_majorant", [&] {
    const auto phi = sample([](double x) { return 1.0 + 0.5 * x; });
    const auto psi = sample([](double x) { return x; });
    const double lhs = std::abs(gls_integral(phi, psi, FracOrder(0.25)));
    const double rhs = gls_bound_rhs(phi, psi, FracOrder(0.25));
    CheckRecord rec{"gls_majorant", 1, lhs / rhs, lhs <= gls_bound_safety() * rhs, ""};
    return rec;
  });

  nlohmann::json header;
  header["version"] = kVersion;
  header["command"] = "fraccalc-selftest";
  header["config"] = cfg.to_json();
  const std::string report = (fs::path(opts.out_dir) / "fraccalc_report.json").string();
  const int code = runner.write_report(report, header);
  RunManifest manifest("fraccalc-selftest", cfg.to_json(), cfg.seed);
  manifest.add_output(report);
  manifest.write(opts.out_dir);
  std::cout << "report: " << report << '\n';
  return code;
}

}  // namespace fracheat::cli
