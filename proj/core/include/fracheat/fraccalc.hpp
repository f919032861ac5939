#pragma once

#include <span>
#include <vector>

#include "fracheat/field.hpp"
#include "fracheat/grid.hpp"

namespace fracheat {

/// Fractional order in (0, 1). Solver-side use additionally needs
/// sigma in (1 - H, 1/2); that window is validated where H is known.
class FracOrder {
 public:
  explicit FracOrder(double s);
  double value() const { return s_; }

 private:
  double s_;
};

/// Scalar function sampled on a uniform grid over [a, b]; operators treat it
/// as its piecewise-linear interpolant, which keeps every singular panel
/// integral in closed form.
struct GridFunction {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> values;

  int n() const { return static_cast<int>(values.size()); }
  double dx() const { return (b - a) / (n() - 1); }
  double node(int k) const { return a + dx() * k; }
  void validate() const;
};

/// Left Riemann-Liouville fractional integral of order sigma at the grid
/// nodes: (1/Gamma(sigma)) int_a^x (x-y)^{sigma-1} phi(y) dy.
GridFunction rl_integral_left(const GridFunction& phi, FracOrder sigma);

/// Left Riemann-Liouville fractional derivative of order sigma at the grid
/// nodes. The value at x = a is the limit: 0 when phi(a) = 0, +-inf otherwise.
GridFunction rl_deriv_left(const GridFunction& phi, FracOrder sigma);

/// Right-sided derivative of order (1 - sigma) of the compensated function
/// psi_{b-}(x) = psi(b) - psi(x); vanishes identically for constant psi.
GridFunction rl_deriv_right_compensated(const GridFunction& psi, FracOrder sigma);

/// Pointwise evaluators used by the product quadrature (exact for the
/// piecewise-linear interpolant, any x in (a, b]).
double eval_rl_deriv_left(const GridFunction& phi, double sigma, double x);
double eval_rl_deriv_right_compensated(const GridFunction& psi, double sigma, double x);

/// Product quadrature for int_a^b D^sigma_{a+}phi . D^{1-sigma}_{b-}psi_{b-} dx
/// on a fixed grid: per-panel Gauss rules with power-law substitutions on the
/// panels touching a (where D^sigma phi ~ (x-a)^{-sigma}) and b (where the
/// right derivative vanishes like (b-x)^sigma). Abscissas depend only on the
/// grid and sigma, so the right-derivative evaluations can be cached and
/// reused across many integrands sharing one integrator path.
class GlsProductRule {
 public:
  GlsProductRule(double a, double b, int nodes, double sigma, int refine = 2);

  const std::vector<double>& abscissas() const { return xs_; }
  const std::vector<double>& weights() const { return ws_; }

  std::vector<double> right_deriv_at_abscissas(std::span<const double> psi_values) const;

  double integrate(std::span<const double> phi_values,
                   std::span<const double> right_deriv_values) const;

 private:
  // Both fractional derivatives at the fixed abscissas are linear in the node
  // values, so each is a dense matrix applied per integrand. This is what
  // makes reusing one rule across thousands of integrands cheap.
  void build_matrices();

  double a_, b_, sigma_;
  int nodes_;
  std::vector<double> xs_, ws_;
  std::vector<double> left_mat_;   // (abscissa, node) row-major
  std::vector<double> right_mat_;  // (abscissa, node) row-major
};

/// Generalized Lebesgue-Stieltjes integral int phi dpsi via the fractional
/// derivative pairing. Linear in both arguments; for smooth psi it agrees
/// with the Riemann-Stieltjes integral.
double gls_integral(const GridFunction& phi, const GridFunction& psi, FracOrder sigma,
                    int refine = 2);

/// Majorant C_sigma ||psi||_{sigma,0,b} int ( |phi|(x-a)^{-sigma}
/// + int |phi(x)-phi(y)| (x-y)^{-1-sigma} dy ) dx with the recorded
/// normalization C_sigma = 1/(Gamma(sigma) Gamma(1-sigma)). The sharp
/// constant is unknown; gls_bound_safety() bounds the worst-case overshoot.
double gls_bound_rhs(const GridFunction& phi, const GridFunction& psi, FracOrder sigma);

/// |gls_integral| <= gls_bound_safety() * gls_bound_rhs always holds for the
/// recorded C_sigma (the derivation gives a factor (2 - sigma) < 2).
constexpr double gls_bound_safety() { return 2.0; }

/// Pathwise Holder-type seminorm on a uniform grid of spacing dx:
/// sup over node pairs u < v of |f(u)-f(v)|/(v-u)^{1-sigma} plus the singular
/// increment integral, all against the piecewise-linear interpolant.
double holder_seminorm_uniform(std::span<const double> values, double sigma, double dx);

/// Per-time-index profiles of the solution norms: sup_{s<=t}||u(s)||_2^2,
/// ||u||^2_{sigma,1,t} and their sum ||u||^2_{sigma,2,t}.
struct NormProfile {
  std::vector<double> sup_sq;
  std::vector<double> sigma1_sq;
  std::vector<double> sigma2_sq;
};

NormProfile norm_profiles(const SpaceTimeField& u, double sigma);
NormProfile norm_profiles_diff(const SpaceTimeField& u, const SpaceTimeField& v,
                               double sigma);

double norm_sigma_1(const SpaceTimeField& u, double sigma, double t);
double norm_sigma_2(const SpaceTimeField& u, double sigma, double t);

}  // namespace fracheat
