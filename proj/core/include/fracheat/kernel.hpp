#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fracheat {

/// Two-medium coefficients a_i (diffusivity), rho_i (density) for the
/// divergence-form operator (1/(2 rho)) d/dx ( rho A d/dx ) with the
/// interface at x = 0, plus the derived reflection data (alpha, beta) and
/// the warped coordinate f.
class MediumParams {
 public:
  static MediumParams create(double a1, double a2, double rho1, double rho2);
  static MediumParams homogeneous() { return create(1.0, 1.0, 1.0, 1.0); }

  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double rho1() const { return rho1_; }
  double rho2() const { return rho2_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  double diffusivity(double x) const { return x <= 0.0 ? a1_ : a2_; }
  double density(double x) const { return x <= 0.0 ? rho1_ : rho2_; }

  /// Warped coordinate: f(y) = y/sqrt(a1) for y <= 0, y/sqrt(a2) for y > 0.
  double warp(double y) const;

 private:
  double a1_, a2_, rho1_, rho2_, alpha_, beta_;
};

std::pair<double, double> derive_alpha_beta(double a1, double a2, double rho1, double rho2);

/// Fundamental solution G(dt, x, y) of the two-medium heat equation.
double G_eval(double dt, double x, double y, const MediumParams& p);

/// Analytic time derivative of G.
double G_dt(double dt, double x, double y, const MediumParams& p);

/// Analytic mixed derivative d^2/(dt ds) G(t-s, z, y), i.e. minus the second
/// derivative of G with respect to the time gap.
double G_dtds(double t, double s, double z, double y, const MediumParams& p);

/// Analytic one-sided space derivative of G at x (side = -1 for x->0-, +1
/// for x->0+ when x == 0).
double G_dx(double dt, double x, double y, const MediumParams& p, int side);

struct CheckRecord {
  std::string name;
  int probes = 0;
  double sup_ratio = 0.0;
  bool pass = false;
  std::string note;
};

/// Quadrature over the real line of a kernel slice (subdivision splits at the
/// interface and refinement doubles until the value is stable).
double integrate_kernel_line(const std::function<double(double)>& f, double center,
                             double width, double rel_tol = 1e-8);

/// Corollary-2-style mass check: max over probes of both one-variable masses
/// against the explicit constant C1 = (1/sqrt(a1)+1/sqrt(a2)) (1+|beta|)
/// max(sqrt(a1), sqrt(a2)).
CheckRecord mass_bound_check(double dt, std::span<const double> probes,
                             const MediumParams& p);

/// Explicit constants from the kernel envelope bounds.
double lemma1_constant(const MediumParams& p);
double mass_constant(const MediumParams& p);

/// sup over probes of int |G(t,z,y)-G(s,z,y)| dz / (s^{-delta} (t-s)^delta).
CheckRecord time_holder_check(double t, double s, std::span<const double> probes,
                              double delta, const MediumParams& p);

/// Double-increment ratio against (t-s)^d (s-tau)^{-2d} (tau-sigma)^d for
/// 0 < sigma_t < tau < s < t.
CheckRecord double_increment_check(double sigma_t, double tau, double s, double t,
                                   std::span<const double> probes, double delta,
                                   const MediumParams& p);

/// |FD_t G - (A(x)/2) FD_xx G| with central differences of width h;
/// requires |x| >= 2h so the stencil stays on one side of the interface.
double pde_residual(double t, double x, double y, const MediumParams& p, double h);

/// (continuity defect, flux defect) of G across the interface at x = 0,
/// using analytic one-sided derivatives.
std::pair<double, double> interface_checks(double t, double y, const MediumParams& p);

/// | int G(t,x,z) G(s,z,y) dz - G(t+s,x,y) |.
double chapman_kolmogorov_defect(double t, double s, double x, double y,
                                 const MediumParams& p);

/// | rho(x) G(t,x,y) - rho(y) G(t,y,x) |.
double detailed_balance_defect(double t, double x, double y, const MediumParams& p);

/// Pointwise envelope |G| <= C_{a1,a2} t^{-1/2} exp(-(f(x)-f(y))^2/(2t)) on a
/// random probe set; sup_ratio is the worst |G|/bound.
CheckRecord lemma1_pointwise_check(int n_probes, std::uint64_t seed,
                                   const MediumParams& p);

/// G >= 0 on random probes (holds when |beta| <= 1; flagged, not assumed).
CheckRecord positivity_check(int n_probes, std::uint64_t seed, const MediumParams& p);

/// sup over random probes of |rho(x) G(t,x,y) - rho(y) G(t,y,x)|.
CheckRecord detailed_balance_check(int n_probes, std::uint64_t seed,
                                   const MediumParams& p);

/// Power-law fit of t -> max_y int |d_t G|^eta dz over a decade of t;
/// reports the log-log slope (expected -3 eta/2 + 1/2).
CheckRecord eta_integral_slope_dt(double eta, std::span<const double> y_probes,
                                  const MediumParams& p, double t_lo = 0.1,
                                  double t_hi = 1.0, int n_t = 8);

/// Same for the mixed derivative (expected -5 eta/2 + 1/2 in the gap).
CheckRecord eta_integral_slope_dtds(double eta, std::span<const double> y_probes,
                                    const MediumParams& p, double u_lo = 0.1,
                                    double u_hi = 1.0, int n_u = 8);

}  // namespace fracheat
