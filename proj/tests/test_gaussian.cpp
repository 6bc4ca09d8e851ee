#include <doctest.h>

#include <cmath>

#include "spb/error.hpp"
#include "spb/gaussian.hpp"
#include "spb/oracle.hpp"

using namespace spb;

namespace {

const AwgnParams kUnit{1.0, 1.0};

}  // namespace

TEST_CASE("golden-ratio point") {
  const AwgnPoint g = awgn_parametric(0.5, kUnit);
  CHECK(g.theta == doctest::Approx(1.6180339887498948).epsilon(1e-15));
  CHECK(g.rate == doctest::Approx(0.13463823477963079).epsilon(1e-13));
  CHECK(g.esp == doctest::Approx(0.08501532787488164).epsilon(1e-13));
  CHECK(g.a2 == doctest::Approx(0.83281572999747636).epsilon(1e-13));
  CHECK(g.a3_bound == doctest::Approx(10.693549274867955).epsilon(1e-12));
  CHECK(g.log_delta_hat == doctest::Approx(66.97602548845803).epsilon(1e-12));
  CHECK(awgn_capacity(0.5, kUnit) == doctest::Approx(0.21965356265451244).epsilon(1e-13));
  CHECK(awgn_capacity(1.0, kUnit) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(std::abs(awgn_rho_star(g.rate, kUnit) - 0.5) <= 1e-9);
}

TEST_CASE("Gaussian closed forms at the golden ratio") {
  const double theta = theta_of_rho(0.5, kUnit);
  const GaussianClosedForms f = gaussian_closed_forms(0.5, 1.0, theta, kUnit);
  CHECK(f.d1_to_center == doctest::Approx(0.35863990127969657).epsilon(1e-13));
  CHECK(f.tilted_var > 1.0);
  CHECK(f.tilted_var < theta);
}

TEST_CASE("center variance identity over the parameter grid") {
  for (double s2 : {0.5, 1.0, 2.0}) {
    for (double c : {0.1, 1.0, 10.0}) {
      const AwgnParams p{s2, c};
      for (int i = 1; i <= 20; ++i) {
        const double rho = 0.05 * i;
        CHECK(theta_identity_residual(rho, theta_of_rho(rho, p), p) <= 1e-12);
      }
      CHECK(theta_of_rho(1.0, p) == doctest::Approx(s2 + c).epsilon(1e-14));
    }
  }
}

TEST_CASE("center variance identity on extreme parameters") {
  // theta - sigma2 is tiny next to theta here, so a few ulps of theta show up
  for (double s2 : {0.01, 100.0}) {
    for (double c : {0.01, 1000.0}) {
      const AwgnParams p{s2, c};
      for (int i = 1; i <= 100; ++i) {
        const double rho = 0.01 * i;
        CHECK(theta_identity_residual(rho, theta_of_rho(rho, p), p) <= 1e-10);
      }
    }
  }
}

TEST_CASE("small orders keep the center variance accurate") {
  const AwgnParams p{1.0, 1.0};
  const double theta = theta_of_rho(1e-8, p);
  CHECK(theta > 1.0);
  CHECK(theta - 1.0 == doctest::Approx(1e-8).epsilon(1e-6));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(awgn_parametric(0.5, AwgnParams{0.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(awgn_parametric(0.5, AwgnParams{1.0, -1.0}), PreconditionError);
  CHECK_THROWS_AS(awgn_parametric(1.0, kUnit), PreconditionError);
  CHECK_THROWS_AS(awgn_rho_star(0.4, kUnit), RateOutOfRangeError);
  CHECK_THROWS_AS(awgn_rho_star(0.0, kUnit), RateOutOfRangeError);
  CHECK_THROWS_AS(shannon_cone(0.4, kUnit), RateOutOfRangeError);
}

TEST_CASE("rate and exponent monotone in the order") {
  double prev_rate = 0.0;
  double prev_esp = kInf;
  for (int i = 1; i < 20; ++i) {
    const AwgnPoint pt = awgn_parametric(0.05 * i, kUnit);
    CHECK(pt.rate > prev_rate);
    CHECK(pt.esp < prev_esp);
    prev_rate = pt.rate;
    prev_esp = pt.esp;
  }
}

TEST_CASE("slope matches a central difference") {
  const double r = 0.1;
  const double fd = fd_derivative_check(
      [](double x) { return awgn_parametric(awgn_rho_star(x, kUnit), kUnit).esp; }, r, 1e-5);
  const double rho = awgn_rho_star(r, kUnit);
  CHECK(fd == doctest::Approx((rho - 1.0) / rho).epsilon(1e-6));
}

TEST_CASE("cone-angle exponent equals the sphere packing exponent") {
  for (double s2 : {0.5, 1.0, 2.0}) {
    for (double c : {0.1, 1.0, 10.0}) {
      const AwgnParams p{s2, c};
      const double cap = awgn_capacity(1.0, p);
      for (int i = 1; i <= 50; ++i) {
        const double rate = cap * i / 51.0;
        const double rho = awgn_rho_star(rate, p);
        CHECK(std::abs(shannon_cone(rate, p).sgex - awgn_parametric(rho, p).esp) <= 1e-8);
      }
      const ConeQuantities q = shannon_cone(0.5 * cap, p);
      CHECK(std::abs(cone_critical_residual(q.theta_cr, p)) <= 1e-10);
      CHECK(q.xi > q.theta_c - 1e-15);
    }
  }
}

TEST_CASE("cone G function") {
  // cos = 0: G = sqrt(4) / 2
  CHECK(cone_G(std::acos(0.0), kUnit) == doctest::Approx(1.0));
  CHECK(cone_G(0.0, AwgnParams{1.0, 4.0}) == doctest::Approx((2.0 + std::sqrt(8.0)) / 2.0));
}

TEST_CASE("capacity is continuous at order one") {
  const double at = awgn_capacity(1.0, kUnit);
  CHECK(std::abs(awgn_capacity(1.0 - 1e-6, kUnit) - at) <= 1e-6);
  CHECK(std::abs(awgn_capacity(1.0 + 1e-6, kUnit) - at) <= 1e-6);
}

TEST_CASE("cone angle at capacity for unit SNR") {
  const ConeQuantities q = shannon_cone(0.1, kUnit);
  CHECK(q.theta_c == doctest::Approx(std::acos(0.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("slope at the golden-ratio rate") {
  const AwgnPoint g = awgn_parametric(0.5, kUnit);
  const double fd = fd_derivative_check(
      [](double x) { return awgn_parametric(awgn_rho_star(x, kUnit), kUnit).esp; }, g.rate, 1e-5);
  CHECK(fd == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("vanishing power limits") {
  const AwgnParams faint{1.0, 1e-9};
  CHECK(theta_of_rho(0.5, faint) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(awgn_capacity(0.5, faint) <= 1e-9);
  const AwgnPoint p = awgn_parametric(0.5, faint);
  CHECK(p.a2 <= 1e-8);
  CHECK(p.esp <= 1e-9);
}

TEST_CASE("rho star grows with the rate") {
  double prev = 0.0;
  for (int i = 1; i < 40; ++i) {
    const double r = awgn_rho_star(0.3465 * i / 40.0, kUnit);
    CHECK(r > prev);
    prev = r;
  }
}
