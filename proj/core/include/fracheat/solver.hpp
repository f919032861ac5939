#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracheat/field.hpp"
#include "fracheat/fraccalc.hpp"
#include "fracheat/kernel.hpp"
#include "fracheat/noise.hpp"

namespace fracheat {

/// Multiplicative coefficient h(z) = h1 z + h2; the fixed-point theory relies
/// on exactly this affine form.
struct AffineCoefficient {
  double h1 = 0.0;
  double h2 = 0.0;
  double operator()(double z) const { return h1 * z + h2; }
};

struct SolverConfig {
  double sigma = 0.375;  // must lie in (1 - H, 1/2)
  AffineCoefficient h;
  double tol = 1e-6;        // stopping threshold on ||u_{p+1} - u_p||_{sigma,2,T}
  int max_iterations = 16;  // p_max
  MediumParams medium = MediumParams::homogeneous();
  TimeGrid time{1.0, 32};
  SpaceGrid space{4.0, 33};
  NoiseSpec noise;
  int quad_refine = 2;   // sub-panels per grid panel in the product quadrature
  int space_refine = 0;  // y-subdivision for the kernel quadrature; 0 = auto

  static double default_sigma(double hurst) { return 0.5 * ((1.0 - hurst) + 0.5); }
  void validate() const;
};

struct PicardDiagnostics {
  std::vector<double> differences;  // d_p = ||u_p - u_{p-1}||_{sigma,2,T}, p >= 1
  double residual = 0.0;            // ||u - A u||_{sigma,2,T} of the returned iterate
  double xi = 0.0;
  int iterations = 0;
  bool converged = false;
  // factorial-decay envelope (c xi^2)^{p+1} T^p / p! with c fitted to the
  // observed differences (the sharp constant is not identified)
  std::vector<double> envelope;
  double fitted_c = 0.0;
};

struct PicardResult {
  SpaceTimeField solution;
  PicardDiagnostics diagnostics;
};

/// Shared tables for one (config, ensemble) pair: the kernel on the
/// (gap, x, y-subgrid) lattice, basis values, product-quadrature rules and
/// the per-component right fractional derivatives of the noise paths.
class SolverWorkspace {
 public:
  SolverWorkspace(const SolverConfig& cfg, const NoiseEnsemble& ens);

  const SolverConfig& config() const { return cfg_; }
  const NoiseEnsemble& ensemble() const { return ens_; }

  /// Integrand tables h(u) prepared once per field.
  struct Prepared {
    std::vector<double> hu_sub;   // (steps+1) x subgrid
    std::vector<double> hu_node;  // (steps+1) x points
  };
  Prepared prepare(const SpaceTimeField& u) const;

  /// zeta_{j,t_i}(u)(t_s, x) for s < i (space quadrature of G h(u) e_j).
  double zeta_value(const SpaceTimeField& u, int j, int i, int s, int x) const;

  /// Row over x of zeta_{j,t_i}(u)(t_s, .); s == i yields the limiting
  /// integrand value h(u(t_i, x)) e_j(x).
  void zeta_row(const Prepared& prep, int j, int i, int s, double* out) const;

  /// The mild-solution operator.
  SpaceTimeField apply_A(const SpaceTimeField& u) const;

  int subgrid_size() const { return static_cast<int>(ysub_.size()); }

 private:
  SolverConfig cfg_;
  NoiseEnsemble ens_;
  std::vector<double> ysub_, wsub_;    // kernel quadrature subgrid on [-L, L]
  std::vector<double> gtab_;           // (gap-1, x, sub) -> G(gap dt, x_k, y_sub)
  std::vector<double> basis_sub_;      // (j-1, sub)
  std::vector<double> basis_node_;     // (j-1, x)
  std::vector<GlsProductRule> rules_;  // per target index i >= 1
  std::vector<std::vector<double>> right_cache_;  // (j-1)*steps + (i-1)

  double zeta_dot(const Prepared& prep, int j, int gap, int x, int s) const;
};

PicardResult picard_solve(const SolverConfig& cfg, const NoiseEnsemble& ens,
                          const std::optional<SpaceTimeField>& initial_guess = {});

double residual_mild(const SpaceTimeField& u, const SolverWorkspace& ws);

/// Gronwall-shape diagnostic: sup over grid times of
/// ||A u - A v||^2_{sigma,2,t} / int_0^t ||u - v||^2_{sigma,2,s} ds.
CheckRecord contraction_check(const SpaceTimeField& u, const SpaceTimeField& v,
                              const SolverWorkspace& ws);

/// Empirical ratio diagnostics for every appendix estimate and both a-priori
/// shapes, evaluated on random grid-time probe tuples (windows
/// delta in (1/3,1), delta' in (1/5,1)).
std::vector<CheckRecord> appendix_bound_suite(const SolverWorkspace& ws,
                                              const SpaceTimeField& u,
                                              const SpaceTimeField& v, int n_probes,
                                              std::uint64_t seed, double delta = 0.5,
                                              double delta_prime = 0.4);

/// Deterministic smooth random field (zero initial row) for diagnostics.
SpaceTimeField random_smooth_field(const TimeGrid& tg, const SpaceGrid& sg,
                                   std::uint64_t seed, double amplitude = 1.0);

}  // namespace fracheat
