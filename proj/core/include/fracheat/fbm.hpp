#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracheat/grid.hpp"

namespace fracheat {

/// Hurst index restricted to the long-memory range (1/2, 1).
class HurstIndex {
 public:
  explicit HurstIndex(double h);

  /// Escape hatch for Brownian smoke runs (H in (0,1)); the standing
  /// assumption elsewhere is H > 1/2 and callers must opt in explicitly.
  static HurstIndex unchecked(double h);

  double value() const { return h_; }

 private:
  HurstIndex() = default;
  double h_ = 0.0;
};

/// One scalar fBm trajectory on a uniform time grid, starting at 0.
struct FbmPath {
  double hurst;
  TimeGrid grid;
  std::vector<double> values;  // length steps()+1, values[0] == 0
  std::uint64_t seed;

  void to_csv(const std::string& path) const;  // columns: t,value
};

/// Covariance of fBm: (t^{2H} + s^{2H} - |t-s|^{2H}) / 2.
double fbm_cov(double hurst, double t, double s);

/// Exact-in-law sampler. Davies-Harte circulant embedding of the increment
/// process, O(N log N); falls back to dense Cholesky when the embedding is
/// not nonnegative-definite. Deterministic given (H, grid, seed).
FbmPath sample_fbm(const HurstIndex& h, const TimeGrid& grid, std::uint64_t seed);

/// Dense Cholesky sampler; the correctness fallback and the test oracle.
FbmPath sample_fbm_cholesky(const HurstIndex& h, const TimeGrid& grid, std::uint64_t seed);

/// Discretized pathwise seminorm
///   sup_{u<v<=t} [ |f(u)-f(v)|/(v-u)^{1-sigma}
///                  + int_u^v |f(u)-f(z)| (z-u)^{sigma-2} dz ],
/// with the sup over grid pairs and the singular integral taken against the
/// piecewise-linear interpolant in closed form per panel.
double holder_seminorm(std::span<const double> values, double sigma,
                       const TimeGrid& grid, double t);

/// Random weight sum lambda_j * ||B_j||_{sigma,0,T}. Requires
/// sigma in (1 - H, 1/2) componentwise.
double xi_factor(const std::vector<FbmPath>& paths, std::span<const double> lambda,
                 double sigma);

}  // namespace fracheat
