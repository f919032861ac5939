#include "fracheat/fbm.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

#include "fracheat/csv.hpp"
#include "fracheat/fraccalc.hpp"
#include "fracheat/rng.hpp"

namespace fracheat {

namespace {

// FFTW plan creation is not thread-safe.
std::mutex g_fftw_mutex;

// Autocovariance of the fractional Gaussian noise increments on spacing dt.
double fgn_cov(double hurst, double dt, int lag) {
  const double k = static_cast<double>(lag);
  const double two_h = 2.0 * hurst;
  return 0.5 * std::pow(dt, two_h) *
         (std::pow(std::abs(k + 1.0), two_h) - 2.0 * std::pow(std::abs(k), two_h) +
          std::pow(std::abs(k - 1.0), two_h));
}

std::vector<double> increments_to_path(const std::vector<double>& inc) {
  std::vector<double> path(inc.size() + 1, 0.0);
  for (std::size_t i = 0; i < inc.size(); ++i) path[i + 1] = path[i] + inc[i];
  return path;
}

// Eigenvalues of the 2N-circulant embedding of the fGn Toeplitz covariance.
// Returns empty when the embedding is indefinite beyond rounding noise.
std::vector<double> circulant_eigenvalues(double hurst, double dt, int n) {
  const int m = 2 * n;
  std::vector<std::complex<double>> row(m);
  for (int j = 0; j <= n; ++j) row[j] = fgn_cov(hurst, dt, j);
  for (int j = n + 1; j < m; ++j) row[j] = row[m - j];

  std::vector<std::complex<double>> freq(m);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_plan plan = fftw_plan_dft_1d(
        m, reinterpret_cast<fftw_complex*>(row.data()),
        reinterpret_cast<fftw_complex*>(freq.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  std::vector<double> lambda(m);
  double max_lambda = 0.0;
  for (int j = 0; j < m; ++j) {
    lambda[j] = freq[j].real();
    max_lambda = std::max(max_lambda, lambda[j]);
  }
  for (double& l : lambda) {
    if (l < -1e-10 * max_lambda) return {};
    if (l < 0.0) l = 0.0;
  }
  return lambda;
}

std::vector<double> sample_increments_circulant(const std::vector<double>& lambda,
                                                int n, std::uint64_t seed) {
  const int m = 2 * n;
  GaussianStream gauss(seed);
  std::vector<std::complex<double>> spec(m);
  spec[0] = std::sqrt(lambda[0]) * gauss.next();
  for (int k = 1; k < n; ++k) {
    const double s = std::sqrt(0.5 * lambda[k]);
    const double re = gauss.next();
    const double im = gauss.next();
    spec[k] = {s * re, s * im};
    spec[m - k] = std::conj(spec[k]);
  }
  spec[n] = std::sqrt(lambda[n]) * gauss.next();

  std::vector<std::complex<double>> out(m);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_plan plan = fftw_plan_dft_1d(
        m, reinterpret_cast<fftw_complex*>(spec.data()),
        reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<double> inc(n);
  for (int j = 0; j < n; ++j) inc[j] = out[j].real() * scale;
  return inc;
}

std::vector<double> sample_increments_cholesky(double hurst, const TimeGrid& grid,
                                               std::uint64_t seed) {
  const int n = grid.steps();
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cov(i, j) = fgn_cov(hurst, grid.dt(), std::abs(i - j));
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("sample_fbm: increment covariance is not positive definite");
  GaussianStream gauss(seed);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z(i) = gauss.next();
  Eigen::VectorXd inc = llt.matrixL() * z;
  return {inc.data(), inc.data() + n};
}

}  // namespace

HurstIndex::HurstIndex(double h) : h_(h) {
  if (!(h > 0.5 && h < 1.0))
    throw std::invalid_argument("HurstIndex: H must lie in (1/2, 1)");
}

HurstIndex HurstIndex::unchecked(double h) {
  if (!(h > 0.0 && h < 1.0))
    throw std::invalid_argument("HurstIndex: H must lie in (0, 1)");
  HurstIndex out;
  out.h_ = h;
  return out;
}

void FbmPath::to_csv(const std::string& path) const {
  CsvWriter csv(path, {"t", "value"});
  for (int i = 0; i <= grid.steps(); ++i) {
    const double row[2] = {grid.node(i), values[i]};
    csv.write_row(row);
  }
}

double fbm_cov(double hurst, double t, double s) {
  if (t < 0.0 || s < 0.0) throw std::invalid_argument("fbm_cov: negative time");
  const double two_h = 2.0 * hurst;
  return 0.5 * (std::pow(t, two_h) + std::pow(s, two_h) - std::pow(std::abs(t - s), two_h));
}

FbmPath sample_fbm(const HurstIndex& h, const TimeGrid& grid, std::uint64_t seed) {
  const int n = grid.steps();
  auto lambda = circulant_eigenvalues(h.value(), grid.dt(), n);
  std::vector<double> inc = lambda.empty()
                                ? sample_increments_cholesky(h.value(), grid, seed)
                                : sample_increments_circulant(lambda, n, seed);
  return {h.value(), grid, increments_to_path(inc), seed};
}

FbmPath sample_fbm_cholesky(const HurstIndex& h, const TimeGrid& grid, std::uint64_t seed) {
  return {h.value(), grid, increments_to_path(sample_increments_cholesky(h.value(), grid, seed)),
          seed};
}

double holder_seminorm(std::span<const double> values, double sigma,
                       const TimeGrid& grid, double t) {
  const int top = grid.index_of(t);
  if (static_cast<int>(values.size()) < top + 1)
    throw std::invalid_argument("holder_seminorm: values shorter than grid range");
  return holder_seminorm_uniform(values.subspan(0, top + 1), sigma, grid.dt());
}

double xi_factor(const std::vector<FbmPath>& paths, std::span<const double> lambda,
                 double sigma) {
  if (paths.size() != lambda.size())
    throw std::invalid_argument("xi_factor: weight count does not match path count");
  double xi = 0.0;
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const auto& p = paths[j];
    if (!(sigma > 1.0 - p.hurst && sigma < 0.5))
      throw std::invalid_argument("xi_factor: sigma outside (1-H, 1/2)");
    if (!(lambda[j] > 0.0)) throw std::invalid_argument("xi_factor: weights must be positive");
    xi += lambda[j] * holder_seminorm(p.values, sigma, p.grid, p.grid.horizon());
  }
  return xi;
}

}  // namespace fracheat
