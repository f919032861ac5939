#include "fracheat/fraccalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracheat {

namespace {

// int_{lo}^{hi} (c0 + c1 w) w^e dw for e not in {-1, -2}. Callers must pass
// c0 == 0 exactly whenever lo == 0 and e < -1.
double power_linear_integral(double c0, double c1, double lo, double hi, double e) {
  double acc = 0.0;
  if (c0 != 0.0) acc += c0 * (std::pow(hi, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0);
  if (c1 != 0.0) acc += c1 * (std::pow(hi, e + 2.0) - std::pow(lo, e + 2.0)) / (e + 2.0);
  return acc;
}

// Same integrand with |c0 + c1 w|, splitting at the sign change.
double power_abs_linear_integral(double c0, double c1, double lo, double hi, double e) {
  const double v_lo = c0 + c1 * lo;
  const double v_hi = c0 + c1 * hi;
  if (v_lo >= 0.0 && v_hi >= 0.0) return power_linear_integral(c0, c1, lo, hi, e);
  if (v_lo <= 0.0 && v_hi <= 0.0) return -power_linear_integral(c0, c1, lo, hi, e);
  const double wz = -c0 / c1;
  const double s = v_lo > 0.0 ? 1.0 : -1.0;
  return s * (power_linear_integral(c0, c1, lo, wz, e) -
              power_linear_integral(c0, c1, wz, hi, e));
}

// Linear coefficients (c0, c1) through (lo, v_lo) and (hi, v_hi); exact zero
// c0 when v_lo == 0 and lo == 0.
struct LinearRep {
  double c0, c1;
};
LinearRep linear_through(double lo, double v_lo, double hi, double v_hi) {
  const double c1 = (v_hi - v_lo) / (hi - lo);
  return {v_lo - c1 * lo, c1};
}

// 8-point Gauss-Legendre on [-1, 1].
constexpr int kG = 8;
constexpr double kGX[kG] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double kGW[kG] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

double lerp_value(const GridFunction& f, double x) {
  const double h = f.dx();
  double pos = (x - f.a) / h;
  int k = std::clamp(static_cast<int>(pos), 0, f.n() - 2);
  const double t = (x - f.node(k)) / h;
  return f.values[k] * (1.0 - t) + f.values[k + 1] * t;
}

}  // namespace

FracOrder::FracOrder(double s) : s_(s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("FracOrder: sigma must lie in (0, 1)");
}

void GridFunction::validate() const {
  if (n() < 2) throw std::invalid_argument("GridFunction: need at least 2 nodes");
  if (!(b > a)) throw std::invalid_argument("GridFunction: requires b > a");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite value");
}

GridFunction rl_integral_left(const GridFunction& phi, FracOrder sigma) {
  phi.validate();
  const double s = sigma.value();
  const double inv_gamma = 1.0 / std::tgamma(s);
  GridFunction out{phi.a, phi.b, std::vector<double>(phi.n(), 0.0)};
  for (int i = 1; i < phi.n(); ++i) {
    const double x = phi.node(i);
    double acc = 0.0;
    for (int k = 0; k < i; ++k) {
      // w = x - y on panel [y_k, y_{k+1}]
      const double lo = x - phi.node(k + 1);
      const double hi = x - phi.node(k);
      const auto rep = linear_through(lo, phi.values[k + 1], hi, phi.values[k]);
      acc += power_linear_integral(rep.c0, rep.c1, lo, hi, s - 1.0);
    }
    out.values[i] = acc * inv_gamma;
  }
  return out;
}

double eval_rl_deriv_left(const GridFunction& phi, double sigma, double x) {
  const double s = sigma;
  const double inv_gamma = 1.0 / std::tgamma(1.0 - s);
  if (x <= phi.a) {
    if (phi.values[0] == 0.0) return 0.0;
    return phi.values[0] > 0.0 ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
  }
  const double fx = lerp_value(phi, x);
  double singular = fx * std::pow(x - phi.a, -s);
  double increment = 0.0;
  const double h = phi.dx();
  const int last = std::min(static_cast<int>((x - phi.a) / h), phi.n() - 2);
  for (int k = 0; k <= last; ++k) {
    const double y_hi = std::min(phi.node(k + 1), x);
    if (y_hi <= phi.node(k)) break;
    // w = x - y; d(w) = phi(x) - phi(x - w), linear on the panel
    const double lo = x - y_hi;
    const double hi = x - phi.node(k);
    const double d_lo = fx - lerp_value(phi, y_hi);
    const double d_hi = fx - phi.values[k];
    const auto rep = (lo == 0.0) ? LinearRep{0.0, d_hi / hi}
                                 : linear_through(lo, d_lo, hi, d_hi);
    increment += power_linear_integral(rep.c0, rep.c1, lo, hi, -1.0 - s);
  }
  return inv_gamma * (singular + s * increment);
}

GridFunction rl_deriv_left(const GridFunction& phi, FracOrder sigma) {
  phi.validate();
  GridFunction out{phi.a, phi.b, std::vector<double>(phi.n(), 0.0)};
  for (int i = 0; i < phi.n(); ++i)
    out.values[i] = eval_rl_deriv_left(phi, sigma.value(), phi.node(i));
  return out;
}

double eval_rl_deriv_right_compensated(const GridFunction& psi, double sigma, double x) {
  // order 1 - sigma applied to psi_{b-}(x) = psi(b) - psi(x)
  const double s = sigma;
  const double inv_gamma = 1.0 / std::tgamma(s);
  const double b = psi.b;
  if (x >= b) return 0.0;
  const double psi_b = psi.values[psi.n() - 1];
  const double gx = psi_b - lerp_value(psi, x);
  double singular = gx * std::pow(b - x, s - 1.0);
  double increment = 0.0;
  const double h = psi.dx();
  const int first = std::max(0, std::min(static_cast<int>((x - psi.a) / h), psi.n() - 2));
  for (int k = first; k < psi.n() - 1; ++k) {
    const double y_lo = std::max(psi.node(k), x);
    if (y_lo >= psi.node(k + 1)) continue;
    // w = y - x; d(w) = psi(y) - psi(x), vanishing at w = 0
    const double lo = y_lo - x;
    const double hi = psi.node(k + 1) - x;
    const double d_lo = lerp_value(psi, y_lo) - lerp_value(psi, x);
    const double d_hi = psi.values[k + 1] - lerp_value(psi, x);
    const auto rep = (lo == 0.0) ? LinearRep{0.0, d_hi / hi}
                                 : linear_through(lo, d_lo, hi, d_hi);
    increment += power_linear_integral(rep.c0, rep.c1, lo, hi, s - 2.0);
  }
  return inv_gamma * (singular + (1.0 - s) * increment);
}

GridFunction rl_deriv_right_compensated(const GridFunction& psi, FracOrder sigma) {
  psi.validate();
  GridFunction out{psi.a, psi.b, std::vector<double>(psi.n(), 0.0)};
  for (int i = 0; i < psi.n(); ++i)
    out.values[i] = eval_rl_deriv_right_compensated(psi, sigma.value(), psi.node(i));
  return out;
}

GlsProductRule::GlsProductRule(double a, double b, int nodes, double sigma, int refine)
    : a_(a), b_(b), sigma_(sigma), nodes_(nodes) {
  if (nodes < 2) throw std::invalid_argument("GlsProductRule: need at least 2 nodes");
  if (!(b > a)) throw std::invalid_argument("GlsProductRule: requires b > a");
  refine = std::max(refine, 1);
  const double h = (b - a) / (nodes - 1);
  const double hs = h / refine;
  const int total_sub = (nodes - 1) * refine;
  xs_.reserve(total_sub * kG);
  ws_.reserve(total_sub * kG);
  for (int sub = 0; sub < total_sub; ++sub) {
    const double lo = a + hs * sub;
    const double hi = lo + hs;
    if (sub == 0) {
      // absorb the (x-a)^{-sigma} head: x = a + hs * u^{1/(1-sigma)}
      const double m = 1.0 / (1.0 - sigma);
      for (int g = 0; g < kG; ++g) {
        const double u = 0.5 * (kGX[g] + 1.0);
        xs_.push_back(a + hs * std::pow(u, m));
        ws_.push_back(0.5 * kGW[g] * hs * m * std::pow(u, m - 1.0));
      }
    } else if (sub == total_sub - 1) {
      // absorb the (b-x)^{sigma} tail: x = b - hs * v^{1/sigma}
      const double m = 1.0 / sigma;
      for (int g = 0; g < kG; ++g) {
        const double v = 0.5 * (kGX[g] + 1.0);
        xs_.push_back(b - hs * std::pow(v, m));
        ws_.push_back(0.5 * kGW[g] * hs * m * std::pow(v, m - 1.0));
      }
    } else {
      for (int g = 0; g < kG; ++g) {
        xs_.push_back(0.5 * (lo + hi) + 0.5 * hs * kGX[g]);
        ws_.push_back(0.5 * kGW[g] * hs);
      }
    }
  }
  build_matrices();
}

void GlsProductRule::build_matrices() {
  const int n = nodes_;
  const double s = sigma_;
  const double h = (b_ - a_) / (n - 1);
  const double inv_gamma_left = 1.0 / std::tgamma(1.0 - s);
  const double inv_gamma_right = 1.0 / std::tgamma(s);
  left_mat_.assign(xs_.size() * n, 0.0);
  right_mat_.assign(xs_.size() * n, 0.0);

  for (std::size_t g = 0; g < xs_.size(); ++g) {
    const double x = xs_[g];
    double* lrow = left_mat_.data() + g * n;
    double* rrow = right_mat_.data() + g * n;
    const int p = std::clamp(static_cast<int>((x - a_) / h), 0, n - 2);
    const double t = (x - (a_ + p * h)) / h;

    // --- left derivative of order s ---
    // head phi(x) (x-a)^{-s}
    const double head_l = std::pow(x - a_, -s);
    lrow[p] += (1.0 - t) * head_l;
    lrow[p + 1] += t * head_l;
    // partial panel touching x: phi(x)-phi(y) = slope_p * (x-y) exactly
    {
      const double hi = x - (a_ + p * h);
      if (hi > 0.0) {
        const double val = s * std::pow(hi, 1.0 - s) / (1.0 - s) / h;
        lrow[p] -= val;
        lrow[p + 1] += val;
      }
    }
    // full panels k < p
    for (int k = 0; k < p; ++k) {
      const double hi = x - (a_ + k * h);
      const double lo = hi - h;
      const double i0 = (std::pow(lo, -s) - std::pow(hi, -s)) / s;
      const double i1 = (std::pow(hi, 1.0 - s) - std::pow(lo, 1.0 - s)) / (1.0 - s);
      // c0 = phi(x) - phi_k - m_k (x - y_k), c1 = m_k
      lrow[p] += s * i0 * (1.0 - t);
      lrow[p + 1] += s * i0 * t;
      lrow[k] += s * (i0 * (-1.0 + hi / h) - i1 / h);
      lrow[k + 1] += s * (-i0 * hi / h + i1 / h);
    }
    for (int k = 0; k < n; ++k) lrow[k] *= inv_gamma_left;

    // --- right derivative of order (1 - s) of psi(b) - psi(.) ---
    // head (psi(b) - psi(x)) (b-x)^{s-1}
    const double head_r = std::pow(b_ - x, s - 1.0);
    rrow[n - 1] += head_r;
    rrow[p] -= (1.0 - t) * head_r;
    rrow[p + 1] -= t * head_r;
    // partial panel [x, y_{p+1}]: psi(y) - psi(x) = m_p (y - x) exactly
    {
      const double hi = (a_ + (p + 1) * h) - x;
      if (hi > 0.0) {
        const double val = (1.0 - s) * std::pow(hi, s) / s / h;
        rrow[p] -= val;
        rrow[p + 1] += val;
      }
    }
    // full panels k > p
    for (int k = p + 1; k < n - 1; ++k) {
      const double lo = (a_ + k * h) - x;
      const double hi = lo + h;
      const double j0 = (std::pow(hi, s - 1.0) - std::pow(lo, s - 1.0)) / (s - 1.0);
      const double j1 = (std::pow(hi, s) - std::pow(lo, s)) / s;
      // c0 = psi_k - m_k (y_k - x) - psi(x), c1 = m_k
      rrow[k] += (1.0 - s) * (j0 * (1.0 + lo / h) - j1 / h);
      rrow[k + 1] += (1.0 - s) * (-j0 * lo / h + j1 / h);
      rrow[p] -= (1.0 - s) * j0 * (1.0 - t);
      rrow[p + 1] -= (1.0 - s) * j0 * t;
    }
    for (int k = 0; k < n; ++k) rrow[k] *= inv_gamma_right;
  }
}

std::vector<double> GlsProductRule::right_deriv_at_abscissas(
    std::span<const double> psi_values) const {
  if (static_cast<int>(psi_values.size()) != nodes_)
    throw std::invalid_argument("GlsProductRule: psi length mismatch");
  std::vector<double> out(xs_.size());
  for (std::size_t g = 0; g < xs_.size(); ++g) {
    const double* row = right_mat_.data() + g * nodes_;
    double acc = 0.0;
    for (int k = 0; k < nodes_; ++k) acc += row[k] * psi_values[k];
    out[g] = acc;
  }
  return out;
}

double GlsProductRule::integrate(std::span<const double> phi_values,
                                 std::span<const double> right_deriv_values) const {
  if (static_cast<int>(phi_values.size()) != nodes_)
    throw std::invalid_argument("GlsProductRule: phi length mismatch");
  if (right_deriv_values.size() != xs_.size())
    throw std::invalid_argument("GlsProductRule: cached right derivative mismatch");
  double acc = 0.0;
  for (std::size_t g = 0; g < xs_.size(); ++g) {
    const double* row = left_mat_.data() + g * nodes_;
    double d = 0.0;
    for (int k = 0; k < nodes_; ++k) d += row[k] * phi_values[k];
    acc += ws_[g] * d * right_deriv_values[g];
  }
  return acc;
}

double gls_integral(const GridFunction& phi, const GridFunction& psi, FracOrder sigma,
                    int refine) {
  phi.validate();
  psi.validate();
  if (phi.n() != psi.n() || phi.a != psi.a || phi.b != psi.b)
    throw std::invalid_argument("gls_integral: operands live on different grids");
  GlsProductRule rule(phi.a, phi.b, phi.n(), sigma.value(), refine);
  const auto right = rule.right_deriv_at_abscissas(psi.values);
  return rule.integrate(phi.values, right);
}

double gls_bound_rhs(const GridFunction& phi, const GridFunction& psi, FracOrder sigma) {
  phi.validate();
  psi.validate();
  if (phi.n() != psi.n() || phi.a != psi.a || phi.b != psi.b)
    throw std::invalid_argument("gls_bound_rhs: operands live on different grids");
  const double s = sigma.value();
  const double c_sigma = 1.0 / (std::tgamma(s) * std::tgamma(1.0 - s));
  const double seminorm = holder_seminorm_uniform(psi.values, s, psi.dx());

  GlsProductRule rule(phi.a, phi.b, phi.n(), s, 2);
  const auto& xs = rule.abscissas();
  const auto& ws = rule.weights();
  double outer = 0.0;
  const double h = phi.dx();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double fx = lerp_value(phi, x);
    double inner = std::abs(fx) * std::pow(x - phi.a, -s);
    const int last = std::min(static_cast<int>((x - phi.a) / h), phi.n() - 2);
    for (int k = 0; k <= last; ++k) {
      const double y_hi = std::min(phi.node(k + 1), x);
      if (y_hi <= phi.node(k)) break;
      const double lo = x - y_hi;
      const double hi = x - phi.node(k);
      const double d_lo = fx - lerp_value(phi, y_hi);
      const double d_hi = fx - phi.values[k];
      const auto rep = (lo == 0.0) ? LinearRep{0.0, d_hi / hi}
                                   : linear_through(lo, d_lo, hi, d_hi);
      inner += power_abs_linear_integral(rep.c0, rep.c1, lo, hi, -1.0 - s);
    }
    outer += ws[i] * inner;
  }
  return c_sigma * seminorm * outer;
}

double holder_seminorm_uniform(std::span<const double> values, double sigma, double dx) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("holder_seminorm_uniform: sigma must lie in (0,1)");
  const int n = static_cast<int>(values.size());
  double best = 0.0;
  for (int a = 0; a + 1 < n; ++a) {
    const double fu = values[a];
    double integral = 0.0;
    for (int b = a + 1; b < n; ++b) {
      const double w_lo = dx * (b - 1 - a);
      const double w_hi = dx * (b - a);
      const double d_lo = fu - values[b - 1];
      const double d_hi = fu - values[b];
      const auto rep = (w_lo == 0.0) ? LinearRep{0.0, d_hi / w_hi}
                                     : linear_through(w_lo, d_lo, w_hi, d_hi);
      integral += power_abs_linear_integral(rep.c0, rep.c1, w_lo, w_hi, sigma - 2.0);
      const double ratio = std::abs(d_hi) / std::pow(w_hi, 1.0 - sigma);
      best = std::max(best, ratio + integral);
    }
  }
  return best;
}

namespace {

NormProfile norm_profiles_impl(const SpaceTimeField& u, const SpaceTimeField* v,
                               double sigma) {
  const auto& tg = u.time_grid();
  const auto& sg = u.space_grid();
  const int n = tg.steps();
  const double dt = tg.dt();

  // row_norm(i, k) = ||w(t_i,.) - w(t_k,.)||_2 with w = u or u - v
  auto row_diff_norm = [&](int i, int k) {
    if (!v) return l2_norm_diff(u.row(i), u.row(k), sg);
    const int m = sg.points();
    double acc = 0.0;
    for (int x = 0; x < m; ++x) {
      const double d = (u.at(i, x) - v->at(i, x)) - (u.at(k, x) - v->at(k, x));
      const double w = (x == 0 || x == m - 1) ? 0.5 : 1.0;
      acc += w * d * d;
    }
    return std::sqrt(acc * sg.dx());
  };
  auto row_norm = [&](int i) {
    if (!v) return l2_norm(u.row(i), sg);
    const int m = sg.points();
    double acc = 0.0;
    for (int x = 0; x < m; ++x) {
      const double d = u.at(i, x) - v->at(i, x);
      const double w = (x == 0 || x == m - 1) ? 0.5 : 1.0;
      acc += w * d * d;
    }
    return std::sqrt(acc * sg.dx());
  };

  NormProfile prof;
  prof.sup_sq.assign(n + 1, 0.0);
  prof.sigma1_sq.assign(n + 1, 0.0);
  prof.sigma2_sq.assign(n + 1, 0.0);

  std::vector<double> inner(n + 1, 0.0);  // inner(s_i) singular integral
  for (int i = 1; i <= n; ++i) {
    const double s_i = tg.node(i);
    double acc = 0.0;
    double d_prev = row_diff_norm(i, 0);
    for (int k = 0; k < i; ++k) {
      // panel [t_k, t_{k+1}] in w = s_i - v, integrand d(w) w^{-sigma-1}
      const double d_hi = d_prev;                                // at v = t_k
      const double d_lo = (k + 1 == i) ? 0.0 : row_diff_norm(i, k + 1);
      d_prev = d_lo;
      const double lo = s_i - tg.node(k + 1);
      const double hi = s_i - tg.node(k);
      const auto rep = (lo == 0.0) ? LinearRep{0.0, d_hi / hi}
                                   : linear_through(lo, d_lo, hi, d_hi);
      acc += power_linear_integral(rep.c0, rep.c1, lo, hi, -sigma - 1.0);
    }
    inner[i] = acc;
  }

  double sup = row_norm(0) * row_norm(0);
  double integral = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double rn = row_norm(i);
    sup = std::max(sup, rn * rn);
    if (i > 0)
      integral += 0.5 * dt * (inner[i - 1] * inner[i - 1] + inner[i] * inner[i]);
    prof.sup_sq[i] = sup;
    prof.sigma1_sq[i] = integral;
    prof.sigma2_sq[i] = sup + integral;
  }
  return prof;
}

}  // namespace

NormProfile norm_profiles(const SpaceTimeField& u, double sigma) {
  return norm_profiles_impl(u, nullptr, sigma);
}

NormProfile norm_profiles_diff(const SpaceTimeField& u, const SpaceTimeField& v,
                               double sigma) {
  if (u.time_grid().steps() != v.time_grid().steps() ||
      u.space_grid().points() != v.space_grid().points())
    throw std::invalid_argument("norm_profiles_diff: fields live on different grids");
  return norm_profiles_impl(u, &v, sigma);
}

double norm_sigma_1(const SpaceTimeField& u, double sigma, double t) {
  const int i = u.time_grid().index_of(t);
  return std::sqrt(norm_profiles(u, sigma).sigma1_sq[i]);
}

double norm_sigma_2(const SpaceTimeField& u, double sigma, double t) {
  const int i = u.time_grid().index_of(t);
  return std::sqrt(norm_profiles(u, sigma).sigma2_sq[i]);
}

}  // namespace fracheat
