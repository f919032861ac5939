#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracheat/fbm.hpp"
#include "fracheat/fraccalc.hpp"
#include "fracheat/grid.hpp"
#include "fracheat/kernel.hpp"

namespace fracheat {

/// Truncated series spec for the L2-valued fBm: J components, Hurst index H,
/// summable weights lambda_j = j^{-p} (p > 1), and the windowed trigonometric
/// basis on [-L, L] extended by zero.
struct NoiseSpec {
  int truncation = 8;           // J
  double hurst = 0.75;          // H in (1/2, 1)
  double lambda_exponent = 2.0; // p > 1
  double half_width = 1.0;      // L of the spatial window

  void validate(bool allow_brownian = false) const;
  double lambda(int j) const;  // j >= 1
};

/// Orthonormal family on [-L, L], zero outside: e_1 constant, then
/// alternating cosine/sine modes, all bounded by sqrt(2/L).
double basis_eval(int j, double x, double half_width);

/// J independent fBm paths with per-component seeds derived from the master.
struct NoiseEnsemble {
  NoiseSpec spec;
  TimeGrid grid;
  std::uint64_t master_seed;
  std::vector<FbmPath> paths;  // paths[j-1] is component j

  static NoiseEnsemble create(const NoiseSpec& spec, const TimeGrid& grid,
                              std::uint64_t master_seed, bool allow_brownian = false);

  /// W^H(t, x) = sum_j lambda_j e_j(x) B_j(t); t must be a grid node.
  double field_sample(double t, double x) const;

  /// Random weight xi = sum_j lambda_j ||B_j||_{sigma,0,T}.
  double xi(double sigma) const;

  /// One CSV per component (t,value) plus a JSON manifest; returns the
  /// written file names in deterministic order.
  std::vector<std::string> write_csv_bundle(const std::string& directory) const;
};

/// Integrand for the stochastic integral: component j evaluated at time node
/// s_idx and space node x_idx. The time index runs over the integration
/// subgrid [0, upto]; the caller provides the limiting value at s_idx = upto.
using ComponentIntegrand = std::function<double(int j, int s_idx, int x_idx)>;

/// Pathwise integral of an operator-valued integrand against the truncated
/// L2-valued fBm over [0, t_upto]:
///   sum_j lambda_j int_0^{t_upto} F_j(s, x) dB_j(s)  per space node x,
/// each component integral taken as a generalized Lebesgue-Stieltjes integral
/// of order sigma in (1 - H, 1/2). The right fractional derivative of each
/// path is computed once per component and reused for every space node.
std::vector<double> integrate_against_WH(const ComponentIntegrand& F, int upto,
                                         const NoiseEnsemble& ens, double sigma,
                                         const SpaceGrid& sg, int refine = 2);

/// Empirical check of the a-priori inequality for the stochastic integral:
/// ratio of ||integral||_2 to xi * sup_j int( ||F(s)e_j||_2 (s-a)^{-sigma} +
/// inner increment term ) ds, reported against the recorded constant.
CheckRecord ineg_check(const ComponentIntegrand& F, int upto, const NoiseEnsemble& ens,
                       double sigma, const SpaceGrid& sg);

}  // namespace fracheat
