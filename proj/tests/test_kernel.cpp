#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fracheat/kernel.hpp"

using namespace fracheat;

namespace {
const MediumParams kHomog = MediumParams::homogeneous();
const MediumParams kTwoMedia = MediumParams::create(4.0, 1.0, 1.0, 2.0);
const MediumParams kReflecting = MediumParams::create(4.0, 1.0, 1.0, 1.0);  // beta=-1/3
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
}  // namespace

TEST_CASE("warped coordinate") {
  CHECK(kReflecting.warp(-2.0) == doctest::Approx(-1.0));
  MediumParams p = MediumParams::create(1.0, 9.0, 1.0, 1.0);
  CHECK(p.warp(3.0) == doctest::Approx(1.0));
  CHECK(p.warp(0.0) == 0.0);
}

TEST_CASE("alpha and beta") {
  auto [a0, b0] = derive_alpha_beta(1, 1, 1, 1);
  CHECK(a0 == doctest::Approx(0.0));
  CHECK(b0 == doctest::Approx(0.0));
  auto [a1, b1] = derive_alpha_beta(4, 1, 1, 1);
  CHECK(a1 == doctest::Approx(-3.0));
  CHECK(b1 == doctest::Approx(-1.0 / 3.0));
  CHECK_THROWS_AS(derive_alpha_beta(-1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("flux identity rho1 sqrt(a1)(1+beta) = rho2 sqrt(a2)(1-beta)") {
  std::mt19937_64 eng(3);
  auto uni = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
  };
  for (int i = 0; i < 200; ++i) {
    const double a1 = uni(0.1, 5.0), a2 = uni(0.1, 5.0);
    const double r1 = uni(0.1, 5.0), r2 = uni(0.1, 5.0);
    auto [alpha, beta] = derive_alpha_beta(a1, a2, r1, r2);
    (void)alpha;
    const double defect =
        r1 * std::sqrt(a1) * (1.0 + beta) - r2 * std::sqrt(a2) * (1.0 - beta);
    CHECK(std::abs(defect) <= 1e-14 * (1.0 + std::abs(beta)) * 10.0);
    CHECK(std::abs(beta) < 1.0);
  }
}

TEST_CASE("kernel closed-form values") {
  CHECK(G_eval(1.0, 0.0, 0.0, kHomog) == doctest::Approx(kInvSqrt2Pi).epsilon(1e-12));
  // two media, beta = -1/3, y = 1: (1/sqrt(2pi)) e^{-1/2} (1 - 1/3)
  const double expect = kInvSqrt2Pi * std::exp(-0.5) * (2.0 / 3.0);
  CHECK(G_eval(1.0, 0.0, 1.0, kReflecting) == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(G_eval(0.0, 0.0, 0.0, kHomog), std::invalid_argument);
}

TEST_CASE("pointwise envelope with the explicit constant") {
  for (const auto& p : {kTwoMedia, kReflecting, MediumParams::create(0.25, 3.0, 2.0, 0.5)}) {
    const auto rec = lemma1_pointwise_check(10000, 77, p);
    CHECK(rec.pass);
    CHECK(rec.sup_ratio <= 1.0 + 1e-12);
  }
}

TEST_CASE("time derivative") {
  // homogeneous at the peak: d/dt (2 pi t)^{-1/2} = -1/2 (2 pi)^{-1/2} t^{-3/2}
  CHECK(G_dt(1.0, 0.0, 0.0, kHomog) ==
        doctest::Approx(-0.5 * kInvSqrt2Pi).epsilon(1e-12));
  // finite-difference oracle
  const double t = 0.5, x = 0.3, y = -0.2, h = 1e-4;
  const double fd =
      (G_eval(t + h, x, y, kTwoMedia) - G_eval(t - h, x, y, kTwoMedia)) / (2.0 * h);
  CHECK(std::abs(fd - G_dt(t, x, y, kTwoMedia)) <= 1e-6);
}

TEST_CASE("mixed derivative") {
  // |d^2/du^2 (2 pi u)^{-1/2}| at u=1 equals 3/4 (2 pi)^{-1/2}
  const double expect = 0.75 * kInvSqrt2Pi;
  CHECK(std::abs(G_dtds(1.5, 0.5, 0.0, 0.0, kHomog)) ==
        doctest::Approx(expect).epsilon(1e-12));
  // cross finite differences fix the sign and the value
  const double t = 0.9, s = 0.3, z = 0.4, y = -0.1, h = 1e-4;
  auto g = [&](double tt, double ss) { return G_eval(tt - ss, z, y, kReflecting); };
  const double fd = (g(t + h, s + h) - g(t + h, s - h) - g(t - h, s + h) +
                     g(t - h, s - h)) /
                    (4.0 * h * h);
  CHECK(std::abs(fd - G_dtds(t, s, z, y, kReflecting)) <= 1e-5);
  CHECK_THROWS_AS(G_dtds(0.3, 0.9, 0.0, 0.0, kHomog), std::invalid_argument);
}

TEST_CASE("mass bound") {
  const std::vector<double> probes = {0.0, 0.3, -0.5, 1.0};
  auto rec = mass_bound_check(1.0, probes, kHomog);
  CHECK(rec.pass);
  CHECK(rec.sup_ratio <= 0.51);  // homogeneous mass is 1, C1 = 2

  rec = mass_bound_check(0.5, probes, kTwoMedia);
  CHECK(rec.pass);

  rec = mass_bound_check(0.01, probes, kTwoMedia);  // near-singular
  CHECK(rec.pass);
}

TEST_CASE("time-Holder ratio") {
  const std::vector<double> probes = {0.0, 0.4, -0.7};
  CHECK_THROWS_AS(time_holder_check(0.5, 0.25, probes, 0.2, kHomog),
                  std::invalid_argument);
  const auto rec = time_holder_check(0.5, 0.25, probes, 0.5, kHomog);
  CHECK(rec.pass);
  CHECK(rec.sup_ratio > 0.0);
  // near-coincident times: the increment integral collapses
  const auto tiny = time_holder_check(0.25 + 1e-7, 0.25, probes, 0.5, kHomog);
  CHECK(tiny.sup_ratio * std::pow(1e-7, 0.5) < 1e-3);
}

TEST_CASE("time-Holder spread over a decade") {
  const std::vector<double> probes = {0.0, 0.4};
  for (const auto& p : {kHomog, kTwoMedia}) {
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double scale = std::pow(10.0, -1.0 + k / 5.0);
      const auto rec = time_holder_check(0.5 * scale, 0.25 * scale, probes, 0.5, p);
      lo = std::min(lo, rec.sup_ratio);
      hi = std::max(hi, rec.sup_ratio);
    }
    CHECK(hi / lo <= 10.0);
  }
}

TEST_CASE("double increment") {
  const std::vector<double> probes = {0.0, 0.4, -0.7};
  CHECK_THROWS_AS(double_increment_check(0.1, 0.2, 0.4, 0.8, probes, 0.1, kTwoMedia),
                  std::invalid_argument);
  CHECK_THROWS_AS(double_increment_check(0.2, 0.1, 0.4, 0.8, probes, 0.4, kTwoMedia),
                  std::invalid_argument);
  const auto rec = double_increment_check(0.1, 0.2, 0.4, 0.8, probes, 0.4, kTwoMedia);
  CHECK(rec.pass);
  // tau -> sigma and t -> s limits collapse the numerator
  const auto near1 =
      double_increment_check(0.1, 0.1 + 1e-8, 0.4, 0.8, probes, 0.4, kTwoMedia);
  CHECK(near1.sup_ratio * std::pow(1e-8, 0.4) < 1e-3);
  const auto near2 =
      double_increment_check(0.1, 0.2, 0.4, 0.4 + 1e-8, probes, 0.4, kTwoMedia);
  CHECK(near2.sup_ratio * std::pow(1e-8, 0.4) < 1e-3);
}

TEST_CASE("eta-integral slopes") {
  const std::vector<double> probes = {0.0, 0.3, -0.5, 1.0};
  for (double eta : {0.5, 1.0}) {
    const auto r1 = eta_integral_slope_dt(eta, probes, kReflecting);
    CHECK(r1.pass);
    CHECK(std::abs(r1.sup_ratio - (-1.5 * eta + 0.5)) <= 0.1);
    const auto r2 = eta_integral_slope_dtds(eta, probes, kReflecting);
    CHECK(r2.pass);
    CHECK(std::abs(r2.sup_ratio - (-2.5 * eta + 0.5)) <= 0.1);
  }
}

TEST_CASE("pde residual vanishes at second order") {
  // homogeneous: Gaussian solves the heat equation
  CHECK(pde_residual(1.0, 0.5, -0.3, kHomog, 1e-3) <= 1e-6);
  for (const auto& p : {kTwoMedia, kReflecting}) {
    for (double x : {-0.5, 0.5}) {
      const double r1 = pde_residual(0.7, x, 0.4, p, 2e-3);
      const double r2 = pde_residual(0.7, x, 0.4, p, 1e-3);
      CHECK(r1 / r2 >= 3.5);
    }
  }
  CHECK_THROWS_AS(pde_residual(0.5, 1e-4, 0.3, kHomog, 1e-3), std::invalid_argument);
}

TEST_CASE("interface continuity and flux") {
  auto [c0, f0] = interface_checks(0.5, 0.7, kHomog);
  CHECK(c0 == 0.0);
  CHECK(f0 <= 1e-15);
  for (double y : {0.7, -0.7}) {
    auto [cont, flux] = interface_checks(0.5, y, kTwoMedia);
    CHECK(cont == 0.0);
    CHECK(flux <= 1e-12);
    auto [cont2, flux2] = interface_checks(0.5, y, kReflecting);
    CHECK(cont2 == 0.0);
    CHECK(flux2 <= 1e-12);
  }
}

TEST_CASE("chapman-kolmogorov") {
  CHECK(chapman_kolmogorov_defect(0.5, 0.5, 0.2, -0.4, kHomog) <= 1e-10);
  CHECK(chapman_kolmogorov_defect(0.5, 0.5, 0.2, 0.4, kTwoMedia) <= 1e-4);
  CHECK(chapman_kolmogorov_defect(0.3, 0.6, -0.2, 0.5, kReflecting) <= 1e-4);
}

TEST_CASE("detailed balance and positivity") {
  for (const auto& p : {kTwoMedia, kReflecting, MediumParams::create(0.5, 2.0, 3.0, 0.7)}) {
    CHECK(detailed_balance_check(2000, 5, p).pass);
    CHECK(positivity_check(2000, 6, p).pass);
  }
}
