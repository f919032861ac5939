#include "fracheat/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fracheat {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double sign_of(double y) { return y > 0.0 ? 1.0 : -1.0; }  // interface belongs to medium 1

// phi_c(u) = (2 pi u)^{-1/2} exp(-c^2 / (2u)) and its u-derivatives.
double phi(double c, double u) {
  return kInvSqrt2Pi / std::sqrt(u) * std::exp(-c * c / (2.0 * u));
}
double phi_du(double c, double u) {
  return phi(c, u) * (c * c / (2.0 * u * u) - 0.5 / u);
}
double phi_duu(double c, double u) {
  const double c2 = c * c;
  return phi(c, u) * (c2 * c2 / (4.0 * u * u * u * u) - 1.5 * c2 / (u * u * u) +
                      0.75 / (u * u));
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGaussN = 16;
constexpr double kGaussX[kGaussN] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGaussW[kGaussN] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

double gauss_segment(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kGaussN; ++i) acc += kGaussW[i] * f(mid + half * kGaussX[i]);
  return acc * half;
}

double composite_gauss(const std::function<double(double)>& f, double a, double b,
                       int panels) {
  double acc = 0.0;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) acc += gauss_segment(f, a + k * h, a + (k + 1) * h);
  return acc;
}

}  // namespace

MediumParams MediumParams::create(double a1, double a2, double rho1, double rho2) {
  if (!(a1 > 0.0 && a2 > 0.0 && rho1 > 0.0 && rho2 > 0.0))
    throw std::invalid_argument("MediumParams: all coefficients must be positive");
  MediumParams p;
  p.a1_ = a1;
  p.a2_ = a2;
  p.rho1_ = rho1;
  p.rho2_ = rho2;
  auto [alpha, beta] = derive_alpha_beta(a1, a2, rho1, rho2);
  p.alpha_ = alpha;
  p.beta_ = beta;
  return p;
}

double MediumParams::warp(double y) const {
  return y <= 0.0 ? y / std::sqrt(a1_) : y / std::sqrt(a2_);
}

std::pair<double, double> derive_alpha_beta(double a1, double a2, double rho1,
                                            double rho2) {
  if (!(a1 > 0.0 && a2 > 0.0 && rho1 > 0.0 && rho2 > 0.0))
    throw std::invalid_argument("derive_alpha_beta: inputs must be positive");
  const double alpha = 1.0 - rho1 * a1 / (rho2 * a2);
  const double num = std::sqrt(a1) + std::sqrt(a2) * (alpha - 1.0);
  const double den = std::sqrt(a1) - std::sqrt(a2) * (alpha - 1.0);
  if (den == 0.0) throw std::invalid_argument("derive_alpha_beta: degenerate beta");
  return {alpha, num / den};
}

double G_eval(double dt, double x, double y, const MediumParams& p) {
  if (!(dt > 0.0)) throw std::invalid_argument("G_eval: dt must be > 0");
  const double pref = (y <= 0.0 ? 1.0 / std::sqrt(p.a1()) : 1.0 / std::sqrt(p.a2()));
  const double fx = p.warp(x);
  const double fy = p.warp(y);
  const double direct = phi(fx - fy, dt);
  const double mirror = phi(std::abs(fx) + std::abs(fy), dt);
  return pref * (direct + p.beta() * sign_of(y) * mirror);
}

double G_dt(double dt, double x, double y, const MediumParams& p) {
  if (!(dt > 0.0)) throw std::invalid_argument("G_dt: dt must be > 0");
  const double pref = (y <= 0.0 ? 1.0 / std::sqrt(p.a1()) : 1.0 / std::sqrt(p.a2()));
  const double fx = p.warp(x);
  const double fy = p.warp(y);
  return pref * (phi_du(fx - fy, dt) +
                 p.beta() * sign_of(y) * phi_du(std::abs(fx) + std::abs(fy), dt));
}

double G_dtds(double t, double s, double z, double y, const MediumParams& p) {
  if (!(s < t)) throw std::invalid_argument("G_dtds: requires s < t");
  const double u = t - s;
  const double pref = (y <= 0.0 ? 1.0 / std::sqrt(p.a1()) : 1.0 / std::sqrt(p.a2()));
  const double fz = p.warp(z);
  const double fy = p.warp(y);
  // d^2/(dt ds) of a function of the gap t-s equals minus its second
  // gap-derivative.
  return -pref * (phi_duu(fz - fy, u) +
                  p.beta() * sign_of(y) * phi_duu(std::abs(fz) + std::abs(fy), u));
}

double G_dx(double dt, double x, double y, const MediumParams& p, int side) {
  if (!(dt > 0.0)) throw std::invalid_argument("G_dx: dt must be > 0");
  const bool left = (x < 0.0) || (x == 0.0 && side < 0);
  const double fprime = 1.0 / std::sqrt(left ? p.a1() : p.a2());
  const double fx = p.warp(x);
  const double fy = p.warp(y);
  const double pref = (y <= 0.0 ? 1.0 / std::sqrt(p.a1()) : 1.0 / std::sqrt(p.a2()));
  // d/dx of |f(x)|: sign(x) * f'(x); at the interface use the requested side.
  const double abs_slope = (left ? -1.0 : 1.0) * fprime;
  const double pd = fx - fy;
  const double qd = std::abs(fx) + std::abs(fy);
  const double direct = phi(pd, dt) * (-pd / dt) * fprime;
  const double mirror = phi(qd, dt) * (-qd / dt) * abs_slope;
  return pref * (direct + p.beta() * sign_of(y) * mirror);
}

double integrate_kernel_line(const std::function<double(double)>& f, double center,
                             double width, double rel_tol) {
  // Window wide enough for Gaussian tails, split at the interface where the
  // integrand is allowed a kink.
  const double lo = center - width;
  const double hi = center + width;
  std::vector<double> cuts = {lo, hi};
  if (lo < 0.0 && hi > 0.0) cuts.insert(cuts.begin() + 1, 0.0);

  int panels = 16;
  double prev = 0.0;
  for (int iter = 0; iter < 12; ++iter) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
      acc += composite_gauss(f, cuts[k], cuts[k + 1], panels);
    if (iter > 0 && std::abs(acc - prev) <= rel_tol * (std::abs(acc) + 1e-300))
      return acc;
    prev = acc;
    panels *= 2;
  }
  throw std::runtime_error("integrate_kernel_line: quadrature did not converge");
}

double lemma1_constant(const MediumParams& p) {
  return (1.0 + std::abs(p.beta())) * kInvSqrt2Pi *
         (1.0 / std::sqrt(p.a1()) + 1.0 / std::sqrt(p.a2()));
}

double mass_constant(const MediumParams& p) {
  return (1.0 / std::sqrt(p.a1()) + 1.0 / std::sqrt(p.a2())) *
         (1.0 + std::abs(p.beta())) * std::max(std::sqrt(p.a1()), std::sqrt(p.a2()));
}

CheckRecord mass_bound_check(double dt, std::span<const double> probes,
                             const MediumParams& p) {
  if (!(dt > 0.0)) throw std::invalid_argument("mass_bound_check: dt must be > 0");
  const double c1 = mass_constant(p);
  const double spread =
      8.0 * std::sqrt(dt * std::max(p.a1(), p.a2())) + 1.0;
  double worst = 0.0;
  for (double v : probes) {
    const double m_first = integrate_kernel_line(
        [&](double z) { return std::abs(G_eval(dt, z, v, p)); }, v, spread + std::abs(v));
    const double m_second = integrate_kernel_line(
        [&](double z) { return std::abs(G_eval(dt, v, z, p)); }, v, spread + std::abs(v));
    worst = std::max({worst, m_first, m_second});
  }
  CheckRecord rec;
  rec.name = "mass_bound";
  rec.probes = static_cast<int>(probes.size());
  rec.sup_ratio = worst / c1;
  rec.pass = worst <= c1 + 1e-6;
  rec.note = "max mass = " + std::to_string(worst) + ", C1 = " + std::to_string(c1);
  return rec;
}

CheckRecord time_holder_check(double t, double s, std::span<const double> probes,
                              double delta, const MediumParams& p) {
  if (!(delta > 1.0 / 3.0 && delta < 1.0))
    throw std::invalid_argument("time_holder_check: delta outside (1/3, 1)");
  if (!(0.0 < s && s < t)) throw std::invalid_argument("time_holder_check: need 0 < s < t");
  const double shape = std::pow(s, -delta) * std::pow(t - s, delta);
  const double spread = 8.0 * std::sqrt(t * std::max(p.a1(), p.a2())) + 1.0;
  double sup = 0.0;
  for (double y : probes) {
    const double val = integrate_kernel_line(
        [&](double z) { return std::abs(G_eval(t, z, y, p) - G_eval(s, z, y, p)); }, y,
        spread + std::abs(y));
    sup = std::max(sup, val / shape);
  }
  CheckRecord rec;
  rec.name = "time_holder";
  rec.probes = static_cast<int>(probes.size());
  rec.sup_ratio = sup;
  rec.pass = std::isfinite(sup);
  return rec;
}

CheckRecord double_increment_check(double sigma_t, double tau, double s, double t,
                                   std::span<const double> probes, double delta,
                                   const MediumParams& p) {
  if (!(delta > 0.2 && delta < 1.0))
    throw std::invalid_argument("double_increment_check: delta outside (1/5, 1)");
  if (!(0.0 < sigma_t && sigma_t < tau && tau < s && s < t))
    throw std::invalid_argument("double_increment_check: need 0 < sigma < tau < s < t");
  const double shape = std::pow(t - s, delta) * std::pow(s - tau, -2.0 * delta) *
                       std::pow(tau - sigma_t, delta);
  const double spread = 8.0 * std::sqrt(t * std::max(p.a1(), p.a2())) + 1.0;
  double sup = 0.0;
  for (double y : probes) {
    const double val = integrate_kernel_line(
        [&](double z) {
          return std::abs(G_eval(t - tau, z, y, p) - G_eval(s - tau, z, y, p) -
                          G_eval(t - sigma_t, z, y, p) + G_eval(s - sigma_t, z, y, p));
        },
        y, spread + std::abs(y));
    sup = std::max(sup, val / shape);
  }
  CheckRecord rec;
  rec.name = "double_increment";
  rec.probes = static_cast<int>(probes.size());
  rec.sup_ratio = sup;
  rec.pass = std::isfinite(sup);
  return rec;
}

double pde_residual(double t, double x, double y, const MediumParams& p, double h) {
  if (std::abs(x) < 2.0 * h)
    throw std::invalid_argument("pde_residual: probe too close to the interface");
  if (!(t > 2.0 * h)) throw std::invalid_argument("pde_residual: t too small for stencil");
  const double gt = (G_eval(t + h, x, y, p) - G_eval(t - h, x, y, p)) / (2.0 * h);
  const double gxx =
      (G_eval(t, x + h, y, p) - 2.0 * G_eval(t, x, y, p) + G_eval(t, x - h, y, p)) /
      (h * h);
  return std::abs(gt - 0.5 * p.diffusivity(x) * gxx);
}

std::pair<double, double> interface_checks(double t, double y, const MediumParams& p) {
  if (!(t > 0.0)) throw std::invalid_argument("interface_checks: t must be > 0");
  // G depends on x only through f(x) and |f(x)|, both continuous at 0, so the
  // two one-sided values are the same expression.
  const double pref = (y <= 0.0 ? 1.0 / std::sqrt(p.a1()) : 1.0 / std::sqrt(p.a2()));
  const double fy = p.warp(y);
  auto value_at_zero = [&](double /*side*/) {
    return pref * (phi(-fy, t) + p.beta() * sign_of(y) * phi(std::abs(fy), t));
  };
  const double continuity = std::abs(value_at_zero(-1.0) - value_at_zero(+1.0));
  const double flux_left = p.rho1() * p.a1() * G_dx(t, 0.0, y, p, -1);
  const double flux_right = p.rho2() * p.a2() * G_dx(t, 0.0, y, p, +1);
  return {continuity, std::abs(flux_left - flux_right)};
}

double chapman_kolmogorov_defect(double t, double s, double x, double y,
                                 const MediumParams& p) {
  if (!(t > 0.0 && s > 0.0))
    throw std::invalid_argument("chapman_kolmogorov_defect: times must be > 0");
  const double spread =
      8.0 * std::sqrt((t + s) * std::max(p.a1(), p.a2())) + std::abs(x) + std::abs(y) + 1.0;
  const double conv = integrate_kernel_line(
      [&](double z) { return G_eval(t, x, z, p) * G_eval(s, z, y, p); },
      0.5 * (x + y), spread, 1e-10);
  return std::abs(conv - G_eval(t + s, x, y, p));
}

double detailed_balance_defect(double t, double x, double y, const MediumParams& p) {
  return std::abs(p.density(x) * G_eval(t, x, y, p) - p.density(y) * G_eval(t, y, x, p));
}

CheckRecord lemma1_pointwise_check(int n_probes, std::uint64_t seed,
                                   const MediumParams& p) {
  std::mt19937_64 eng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
  };
  const double c = lemma1_constant(p);
  double sup = 0.0;
  for (int i = 0; i < n_probes; ++i) {
    const double t = uniform(1e-3, 2.0);
    const double x = uniform(-4.0, 4.0);
    const double y = uniform(-4.0, 4.0);
    const double d = p.warp(x) - p.warp(y);
    const double bound = c / std::sqrt(t) * std::exp(-d * d / (2.0 * t));
    sup = std::max(sup, std::abs(G_eval(t, x, y, p)) / bound);
  }
  CheckRecord rec;
  rec.name = "pointwise_envelope";
  rec.probes = n_probes;
  rec.sup_ratio = sup;
  rec.pass = sup <= 1.0 + 1e-12;
  return rec;
}

CheckRecord positivity_check(int n_probes, std::uint64_t seed, const MediumParams& p) {
  std::mt19937_64 eng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
  };
  double min_val = 0.0;
  for (int i = 0; i < n_probes; ++i) {
    const double t = uniform(1e-3, 2.0);
    const double x = uniform(-4.0, 4.0);
    const double y = uniform(-4.0, 4.0);
    min_val = std::min(min_val, G_eval(t, x, y, p));
  }
  CheckRecord rec;
  rec.name = "kernel_positivity";
  rec.probes = n_probes;
  rec.sup_ratio = -min_val;
  rec.pass = min_val >= -1e-15;
  rec.note = "|beta| = " + std::to_string(std::abs(p.beta()));
  return rec;
}

CheckRecord detailed_balance_check(int n_probes, std::uint64_t seed,
                                   const MediumParams& p) {
  std::mt19937_64 eng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
  };
  double sup = 0.0;
  for (int i = 0; i < n_probes; ++i) {
    const double t = uniform(5e-2, 2.0);
    const double x = uniform(-3.0, 3.0);
    const double y = uniform(-3.0, 3.0);
    sup = std::max(sup, detailed_balance_defect(t, x, y, p));
  }
  CheckRecord rec;
  rec.name = "detailed_balance";
  rec.probes = n_probes;
  rec.sup_ratio = sup;
  rec.pass = sup <= 1e-12;
  return rec;
}

namespace {

CheckRecord slope_record(const std::string& name, double target,
                         const std::vector<double>& ts, const std::vector<double>& vals) {
  // least-squares slope of log(val) vs log(t)
  const int n = static_cast<int>(ts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(ts[i]);
    const double ly = std::log(vals[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CheckRecord rec;
  rec.name = name;
  rec.probes = n;
  rec.sup_ratio = slope;
  rec.pass = std::isfinite(slope) && std::abs(slope - target) <= 0.1;
  rec.note = "slope = " + std::to_string(slope) + ", target = " + std::to_string(target);
  return rec;
}

}  // namespace

CheckRecord eta_integral_slope_dt(double eta, std::span<const double> y_probes,
                                  const MediumParams& p, double t_lo, double t_hi,
                                  int n_t) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta_integral_slope_dt: eta must be > 0");
  std::vector<double> ts(n_t), vals(n_t);
  for (int i = 0; i < n_t; ++i)
    ts[i] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n_t - 1));
  const double amax = std::max(p.a1(), p.a2());
  for (int i = 0; i < n_t; ++i) {
    const double t = ts[i];
    double best = 0.0;
    for (double y : y_probes) {
      const double spread = 14.0 * std::sqrt(t * amax / std::min(1.0, eta)) + std::abs(y);
      const double val = integrate_kernel_line(
          [&](double z) { return std::pow(std::abs(G_dt(t, z, y, p)), eta); }, y, spread,
          1e-6);
      best = std::max(best, val);
    }
    vals[i] = best;
  }
  return slope_record("eta_integral_dt", -1.5 * eta + 0.5, ts, vals);
}

CheckRecord eta_integral_slope_dtds(double eta, std::span<const double> y_probes,
                                    const MediumParams& p, double u_lo, double u_hi,
                                    int n_u) {
  if (!(eta > 0.0))
    throw std::invalid_argument("eta_integral_slope_dtds: eta must be > 0");
  std::vector<double> us(n_u), vals(n_u);
  for (int i = 0; i < n_u; ++i)
    us[i] = u_lo * std::pow(u_hi / u_lo, static_cast<double>(i) / (n_u - 1));
  const double amax = std::max(p.a1(), p.a2());
  for (int i = 0; i < n_u; ++i) {
    const double u = us[i];
    double best = 0.0;
    for (double y : y_probes) {
      const double spread = 14.0 * std::sqrt(u * amax / std::min(1.0, eta)) + std::abs(y);
      const double val = integrate_kernel_line(
          [&](double z) { return std::pow(std::abs(G_dtds(u, 0.0, z, y, p)), eta); }, y,
          spread, 1e-6);
      best = std::max(best, val);
    }
    vals[i] = best;
  }
  return slope_record("eta_integral_dtds", -2.5 * eta + 0.5, us, vals);
}

}  // namespace fracheat
